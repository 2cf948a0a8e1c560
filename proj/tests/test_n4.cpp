#include <doctest.h>

#include "confalg/builders.hpp"
#include "confalg/error.hpp"
#include "confalg/sampling.hpp"

using namespace confalg;
using namespace confalg::n4;

namespace {

const RingSpec kConst = RingSpec::constant();
const RingSpec kLaurent = RingSpec::laurent();

ConfElement term(const RingSpec &s, int g, int m, Scalar c) { return ConfElement::term(s, g, m, c); }
Mat2 mat(const std::string &text, const RingSpec &s = kConst) { return parse_matrix(text, s); }

std::vector<RingSpec> specs() {
  return {kConst, kLaurent, RingSpec::trunc(4), RingSpec::puiseux(2)};
}

} // namespace

TEST_SUITE("n4-calculus") {

TEST_CASE("encode") {
  CHECK(T_of(Mat2::pauli(kConst, 1)) == term(kConst, T1, 0, 2));
  CHECK(T_of(Mat2::pauli(kConst, 2)) == term(kConst, T2, 0, 2));
  CHECK(T_of(Mat2::pauli(kConst, 3)) == term(kConst, T3, 0, 2));
  CHECK(G_of(Mat2::identity(kConst)) ==
        term(kConst, G1, 0, -Scalar::i()) + term(kConst, Gb1, 0, -Scalar::i()));
  CHECK(G_of(mat("[[0,1],[0,0]]")) == term(kConst, G2, 0, Scalar::i()));
  CHECK(G_of(mat("[[0,0],[1,0]]")) == term(kConst, Gb2, 0, -Scalar::i()));
  CHECK_THROWS_AS(T_of(Mat2::identity(kConst)), InvalidArgument);
  CHECK_THROWS_AS(LTGTriple(RingElement(kConst), Mat2::identity(kConst), Mat2::zero(kConst)),
                  InvalidArgument);
}

TEST_CASE("decode") {
  LTGTriple t = decode(term(kConst, T1, 0, 2));
  CHECK(t.r().is_zero());
  CHECK(t.X() == Mat2::pauli(kConst, 1));
  CHECK(t.M() == Mat2::zero(kConst));
  RingElement tt = RingElement::monomial(kLaurent, 1, 1);
  LTGTriple l = decode(L_of(tt));
  CHECK(l.r() == tt);
  CHECK(l.X() == Mat2::zero(kLaurent));
  CHECK_THROWS_AS(decode(term(kConst, L, 1, 1)), InvalidArgument);
}

TEST_CASE("encode and decode are inverse") {
  Rng rng(401);
  for (const auto &s : specs())
    for (int k = 0; k < 50; ++k) {
      LTGTriple t = random_ltg(s, rng);
      CHECK(decode(encode(t)) == t);
      // and on the element side, for random V (x) R elements
      ConfElement e(s);
      for (int g = 0; g < 8; ++g)
        e += ConfElement::term(s, g, 0, random_ring_element(s, rng));
      CHECK(encode(decode(e)) == e);
    }
}

TEST_CASE("dagger") {
  CHECK(dagger(mat("[[1,0],[0,0]]")) == mat("[[0,0],[0,-1]]"));
  CHECK(dagger(Mat2::identity(kConst)) == -Mat2::identity(kConst));
  Mat2 s1 = Mat2::pauli(kConst, 1), s3 = Mat2::pauli(kConst, 3);
  CHECK(dagger(s1 * s3) == mat("[[0,-1],[1,0]]"));
  CHECK(dagger(s1 * s3) == -(dagger(s3) * dagger(s1)));
}

TEST_CASE("dagger identities on random matrices") {
  Rng rng(402);
  for (const auto &s : specs())
    for (int k = 0; k < 60; ++k) {
      std::vector<Mat2> xs;
      for (int j = 0; j < 4; ++j)
        xs.push_back(random_mat2(s, rng));
      // (X1...Xn)^dagger = (-1)^(n+1) Xn^dagger ... X1^dagger
      for (size_t n = 1; n <= 4; ++n) {
        Mat2 prod = xs[0], rev = dagger(xs[0]);
        for (size_t j = 1; j < n; ++j) {
          prod = prod * xs[j];
          rev = dagger(xs[j]) * rev;
        }
        CHECK(dagger(prod) == (n % 2 ? rev : -rev));
      }
      Mat2 x = xs[0], y = xs[1];
      CHECK(x * dagger(y) + y * dagger(x) == (x * dagger(y)).trace() * Mat2::identity(s));
      Mat2 a = random_sl2(s, rng);
      CHECK(a * -dagger(a) == Mat2::identity(s));
      CHECK(*mat_inverse(a) == -dagger(a));
    }
}

TEST_CASE("matrix literals") {
  Mat2 m = mat("[[1/2, t], [-i, t^-1 + 2]]", kLaurent);
  CHECK(m.a == RingElement(kLaurent, Scalar(1, 2)));
  CHECK(m.b == RingElement::monomial(kLaurent, 1, 1));
  CHECK(m.c == RingElement(kLaurent, -Scalar::i()));
  CHECK(parse_matrix(m.to_string(), kLaurent) == m);
  CHECK_THROWS_AS(mat("[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS(mat("[1,2,3,4]"), ParseError);
}

TEST_CASE("structured bracket examples") {
  const StructureTable &t = *n4_table();
  auto r1 = RingElement(kConst, 1);
  LTGTriple l1(r1, Mat2::zero(kConst), Mat2::zero(kConst));
  LambdaPoly ll = structured_bracket(l1, l1);
  CHECK(ll.coeff(0) == term(kConst, L, 1, 1));
  CHECK(ll.coeff(1) == term(kConst, L, 0, 2));

  LTGTriple ts1(RingElement(kConst), Mat2::pauli(kConst, 1), Mat2::zero(kConst));
  LTGTriple ts2(RingElement(kConst), Mat2::pauli(kConst, 2), Mat2::zero(kConst));
  LambdaPoly tt = structured_bracket(ts1, ts2);
  CHECK(tt.degree() == 0);
  CHECK(tt.coeff(0) == term(kConst, T3, 0, Scalar(0, mpq_class(4))));

  const RingElement tvar = RingElement::monomial(kLaurent, 1, 1);
  LTGTriple gt(RingElement(kLaurent), Mat2::zero(kLaurent), tvar * Mat2::identity(kLaurent));
  LTGTriple g1(RingElement(kLaurent), Mat2::zero(kLaurent), Mat2::identity(kLaurent));
  LambdaPoly gg = structured_bracket(gt, g1);
  // 2 L(tr(t I I^dagger)) = -4 L(t); the T parts cancel
  LambdaPoly expect(kLaurent);
  expect.add(0, L_of(RingElement::monomial(kLaurent, -4, 1)));
  CHECK(gg == expect);
  CHECK(gg == lambda_bracket(t, encode(gt), encode(g1)));
}

TEST_CASE("structured bracket equals the engine on generator pairs") {
  const StructureTable &t = *n4_table();
  for (const auto &s : specs())
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        ConfElement a = ConfElement::generator(s, i), b = ConfElement::generator(s, j);
        CHECK(structured_bracket(decode(a), decode(b)) == lambda_bracket(t, a, b));
      }
}

TEST_CASE("structured bracket equals the engine on random pairs") {
  Rng rng(403);
  const StructureTable &t = *n4_table();
  for (const auto &s : specs())
    for (int k = 0; k < 50; ++k) {
      LTGTriple u = random_ltg(s, rng), v = random_ltg(s, rng);
      CAPTURE(s.name());
      CHECK(structured_bracket(u, v) == lambda_bracket(t, encode(u), encode(v)));
    }
}

} // TEST_SUITE
