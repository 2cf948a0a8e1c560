#include <doctest.h>

#include "confalg/builders.hpp"
#include "confalg/error.hpp"
#include "confalg/sampling.hpp"

using namespace confalg;
using namespace confalg::n4;

namespace {

const RingSpec kConst = RingSpec::constant();
const RingSpec kLaurent = RingSpec::laurent();

Mat2 mat(const std::string &text, const RingSpec &s = kConst) { return parse_matrix(text, s); }
Mat2 id(const RingSpec &s) { return Mat2::identity(s); }
ConfElement gen(const RingSpec &s, int g) { return ConfElement::generator(s, g); }

std::vector<RingSpec> specs() {
  return {kConst, kLaurent, RingSpec::trunc(4), RingSpec::puiseux(2)};
}

bool same_up_to_sign(const SL2Pair &p, const SL2Pair &q) {
  return (p.A == q.A && p.B == q.B) || (p.A == -q.A && p.B == -q.B);
}

} // namespace

TEST_SUITE("morphisms") {

TEST_CASE("theta examples") {
  CHECK(theta(SL2Pair(id(kConst), id(kConst))).is_identity());
  CHECK(theta(SL2Pair(-id(kLaurent), -id(kLaurent))).is_identity());
  ConfMorphism th = theta(SL2Pair(mat("[[1,t],[0,1]]", kLaurent), id(kLaurent)));
  CHECK(th.image(L) == gen(kLaurent, L) + gen(kLaurent, T1) + gen(kLaurent, T2) * Scalar::i());
  CHECK_THROWS_AS(theta(SL2Pair(mat("[[2,0],[0,1]]"), id(kConst))), InvalidArgument);
  CHECK_THROWS_AS(theta(SL2Pair(id(kLaurent), mat("[[1,t],[0,1]]", kLaurent))), InvalidArgument);
  CHECK_THROWS_AS(SL2Pair(id(kLaurent), id(kConst)), SpecMismatch);
}

TEST_CASE("theta formulas on matrix arguments") {
  Rng rng(501);
  for (const auto &s : specs())
    for (int k = 0; k < 10; ++k) {
      SL2Pair p = random_sl2_pair(s, rng);
      ConfMorphism th = theta(p);
      Mat2 ainv = -dagger(p.A), binv = -dagger(p.B);
      RingElement r = random_ring_element(s, rng);
      Mat2 x = random_traceless(s, rng), m = random_mat2(s, rng);
      CHECK(th.apply(L_of(r)) == L_of(r) + T_of(r * (mat_delta(p.A) * ainv)));
      CHECK(th.apply(T_of(x)) == T_of(p.A * x * ainv));
      CHECK(th.apply(G_of(m)) == G_of(p.A * m * binv));
    }
}

TEST_CASE("is_conf_automorphism") {
  for (const auto &s : specs()) {
    Rng rng(502);
    SL2Pair p = random_sl2_pair(s, rng);
    AutomorphismReport rep = is_conf_automorphism(theta(p));
    CHECK(rep.is_automorphism());
    REQUIRE(rep.inverse);
    CHECK(compose(*rep.inverse, theta(p)).is_identity());
  }
  // L -> 2L: [L_lam L] is not preserved
  std::vector<ConfElement> images;
  for (int g = 0; g < 8; ++g)
    images.push_back(gen(kConst, g) * Scalar(g == L ? 2 : 1));
  AutomorphismReport bad = is_conf_automorphism(ConfMorphism(n4_table(), kConst, images));
  CHECK(bad.status == AutomorphismReport::Status::NotAutomorphism);
  REQUIRE(bad.witness);
  CHECK(*bad.witness == std::pair<int, int>{L, L});
}

TEST_CASE("parity and invertibility failures") {
  std::vector<ConfElement> images;
  for (int g = 0; g < 8; ++g)
    images.push_back(gen(kConst, g));
  images[G1] = gen(kConst, L);
  CHECK_FALSE(is_conf_automorphism(ConfMorphism(n4_table(), kConst, images)).is_automorphism());
  // the zero map preserves every bracket but is not invertible
  std::vector<ConfElement> zero(8, ConfElement(kConst));
  AutomorphismReport z = is_conf_automorphism(ConfMorphism(n4_table(), kConst, zero));
  CHECK(z.status == AutomorphismReport::Status::NotAutomorphism);
  CHECK_FALSE(z.witness);
}

TEST_CASE("compose") {
  Rng rng(503);
  for (const auto &s : specs()) {
    SL2Pair p = random_sl2_pair(s, rng), q = random_sl2_pair(s, rng);
    CHECK(compose(theta(p), theta(q)) == theta(p * q));
    ConfMorphism th = theta(p);
    CHECK(compose(th, ConfMorphism::identity(n4_table(), s)) == th);
    CHECK(compose(ConfMorphism::identity(n4_table(), s), th) == th);
  }
  ConfMorphism phi = k2_phi();
  CHECK(compose(phi, phi).is_identity());
}

TEST_CASE("homomorphism law, seeded") {
  Rng rng(504);
  for (const auto &s : specs())
    for (int k = 0; k < 15; ++k) {
      SL2Pair p = random_sl2_pair(s, rng), q = random_sl2_pair(s, rng);
      CAPTURE(s.name());
      CHECK(theta(p * q) == compose(theta(p), theta(q)));
    }
}

TEST_CASE("morphisms preserve brackets of arbitrary elements") {
  Rng rng(505);
  const StructureTable &t = *n4_table();
  for (const auto &s : specs()) {
    ConfMorphism th = theta(random_sl2_pair(s, rng));
    for (int k = 0; k < 5; ++k) {
      ConfElement a(s), b(s);
      for (int g = 0; g < 8; ++g) {
        a += ConfElement::term(s, g, static_cast<int>(rng() % 2), random_ring_element(s, rng));
        b += ConfElement::term(s, g, static_cast<int>(rng() % 2), random_ring_element(s, rng));
      }
      CHECK(th.apply(lambda_bracket(t, a, b)) == lambda_bracket(t, th.apply(a), th.apply(b)));
      CHECK(th.apply(apply_dhat(a)) == apply_dhat(th.apply(a)));
    }
  }
}

TEST_CASE("kernel") {
  for (const auto &s : {kConst, kLaurent, RingSpec::trunc(4)}) {
    KernelResult one = kernel_witness(SL2Pair(id(s), id(s)));
    CHECK(one.in_kernel);
    CHECK(*one.a == RingElement(s, 1));
    KernelResult minus = kernel_witness(SL2Pair(-id(s), -id(s)));
    CHECK(minus.in_kernel);
    CHECK(*minus.a == RingElement(s, -1));
    KernelResult mixed = kernel_witness(SL2Pair(id(s), -id(s)));
    CHECK_FALSE(mixed.in_kernel);
    CHECK(*mixed.witness == G1);
    CHECK_FALSE(kernel_witness(SL2Pair(-id(s), id(s))).in_kernel);
  }
}

TEST_CASE("kernel is exactly (aI, aI) with a^2 = 1, a constant") {
  // candidates a = c t^k over Laurent; only c = +-1, k = 0 give an SL2 pair
  const std::vector<Scalar> grid{1, -1, 2, Scalar(1, 2), Scalar::i(), -Scalar::i()};
  for (const auto &s : {kConst, kLaurent}) {
    int members = 0;
    for (const auto &c : grid)
      for (long k = (s == kConst ? 0 : -2); k <= (s == kConst ? 0 : 2); ++k) {
        RingElement a = RingElement::monomial(s, c, k);
        SL2Pair p(a * id(s), a * id(s));
        const bool valid = !p.violation();
        CHECK(valid == (a * a == RingElement(s, 1)));
        if (valid) {
          CHECK(kernel_witness(p).in_kernel);
          ++members;
        }
      }
    CHECK(members == 2);
  }
  Rng rng(506);
  for (const auto &s : specs())
    for (int k = 0; k < 20; ++k) {
      SL2Pair p = random_sl2_pair(s, rng);
      const bool scalar = (p.A == id(s) || p.A == -id(s)) && p.A == p.B;
      CHECK(kernel_witness(p).in_kernel == scalar);
    }
}

TEST_CASE("factorize") {
  SL2Pair p(mat("[[2,1],[1,1]]"), id(kConst));
  FactorizeResult r = factorize(theta(p));
  REQUIRE(r.kind == FactorizeResult::Kind::Pair);
  CHECK(same_up_to_sign(*r.pair, p));
  CHECK(theta(*r.pair) == theta(p));
  SL2Pair neg(-r.pair->A, -r.pair->B);
  CHECK(theta(neg) == theta(p));

  FactorizeResult one = factorize(ConfMorphism::identity(n4_table(), kConst));
  REQUIRE(one.kind == FactorizeResult::Kind::Pair);
  CHECK(same_up_to_sign(*one.pair, SL2Pair(id(kConst), id(kConst))));

  // conjugation by a det-2 matrix: normalizing needs sqrt(2)
  Mat2 a0 = mat("[[2,0],[0,1/2]]") * mat("[[1,1],[1,2]]") * mat("[[2,0],[0,1]]");
  CHECK(a0.det() == RingElement(kConst, 2));
  Mat2 b0 = mat("[[2,0],[0,1]]");
  CHECK(is_conf_automorphism(conjugation(a0, b0)).is_automorphism());
  FactorizeResult ext = factorize(conjugation(a0, b0));
  CHECK(ext.kind == FactorizeResult::Kind::ExtensionRequired);

  // a det-4 conjugation has a square root and factors
  const Mat2 two = mat("[[2,0],[0,2]]");
  FactorizeResult ok = factorize(conjugation(two * mat("[[2,1],[1,1]]"), two));
  REQUIRE(ok.kind == FactorizeResult::Kind::Pair);
  CHECK(same_up_to_sign(*ok.pair, p));

  // L -> 2L is no automorphism
  std::vector<ConfElement> images;
  for (int g = 0; g < 8; ++g)
    images.push_back(gen(kConst, g) * Scalar(g == L ? 2 : 1));
  CHECK(factorize(ConfMorphism(n4_table(), kConst, images)).kind ==
        FactorizeResult::Kind::NotAnAutomorphism);
  CHECK_THROWS_AS(factorize(ConfMorphism::identity(n4_table(), kLaurent)), InvalidArgument);
}

TEST_CASE("factorize round trip, seeded") {
  Rng rng(507);
  for (int k = 0; k < 25; ++k) {
    SL2Pair p = random_sl2_pair(kConst, rng);
    FactorizeResult r = factorize(theta(p));
    REQUIRE(r.kind == FactorizeResult::Kind::Pair);
    CHECK(same_up_to_sign(*r.pair, p));
    CHECK(theta(*r.pair) == theta(p));
    // deterministic: the same map gives the same pair
    CHECK(factorize(theta(SL2Pair(-p.A, -p.B))).pair == r.pair);
  }
}

TEST_CASE("delta(B) = 0 and det(B) = 1 are needed") {
  const RingSpec s = kLaurent;
  AutomorphismReport nonconst = is_conf_automorphism(theta_formula(id(s), mat("[[1,t],[0,1]]", s)));
  CHECK(nonconst.status == AutomorphismReport::Status::NotAutomorphism);
  REQUIRE(nonconst.witness);
  // the failing pair couples L with an odd generator
  auto [a, b] = *nonconst.witness;
  CHECK((a == L || b == L));
  CHECK((a >= G1 || b >= G1));

  AutomorphismReport scaled = is_conf_automorphism(theta_formula(id(s), 2 * id(s)));
  CHECK(scaled.status == AutomorphismReport::Status::NotAutomorphism);
  REQUIRE(scaled.witness);
  CHECK(scaled.witness->first >= G1);
  CHECK(scaled.witness->second >= G1);
}

TEST_CASE("functoriality along Laurent -> Puiseux") {
  Rng rng(508);
  for (int d : {2, 3}) {
    const RingSpec p = RingSpec::puiseux(d);
    for (int k = 0; k < 10; ++k) {
      SL2Pair pair = random_sl2_pair(kLaurent, rng);
      CHECK(theta(embed(pair, p)) == embed(theta(pair), p));
    }
  }
}

TEST_CASE("V-stability") {
  Rng rng(509);
  for (const auto &s : specs())
    CHECK(theta(random_sl2_pair(s, rng)).is_V_stable());
  CHECK(ConfMorphism::identity(n4_table(), kConst).is_V_stable());
  CHECK_FALSE(k2_phi().is_V_stable());
}

TEST_CASE("the K2 involution") {
  using namespace k2alt;
  ConfMorphism phi = k2_phi();
  CHECK(phi.image(one) == ConfElement::generator(kConst, one) - ConfElement::term(kConst, xidxi, 1, 1));
  CHECK(phi.image(xi) == ConfElement::generator(kConst, dxi));
  CHECK(phi.image(dxi) == ConfElement::generator(kConst, xi));
  CHECK(phi.image(xidxi) == -ConfElement::generator(kConst, xidxi));
  CHECK(is_conf_automorphism(phi, phi).is_automorphism());
  CHECK(is_conf_automorphism(phi).status == AutomorphismReport::Status::Inconclusive);
  CHECK(compose(phi, phi).is_identity());
  // a wrong witness is caught
  CHECK_FALSE(is_conf_automorphism(phi, ConfMorphism::identity(k2_alt_table(), kConst))
                  .is_automorphism());
}

TEST_CASE("ring matrix inverse") {
  Rng rng(510);
  for (const auto &s : specs()) {
    ConfMorphism th = theta(random_sl2_pair(s, rng));
    RingMatrix m(8, std::vector<RingElement>(8, RingElement(s)));
    for (int g = 0; g < 8; ++g)
      for (const auto &[k, r] : th.image(g).terms())
        m[static_cast<size_t>(k.first)][static_cast<size_t>(g)] = r;
    auto inv = ring_inverse(m);
    REQUIRE(inv);
    for (size_t i = 0; i < 8; ++i)
      for (size_t j = 0; j < 8; ++j) {
        RingElement e(s);
        for (size_t k = 0; k < 8; ++k)
          e += m[i][k] * (*inv)[k][j];
        CHECK(e == RingElement(s, i == j ? 1 : 0));
      }
  }
  RingMatrix sing{{RingElement(kConst, 1), RingElement(kConst, 2)},
                  {RingElement(kConst, 2), RingElement(kConst, 4)}};
  CHECK(ring_det(sing).is_zero());
  CHECK_FALSE(ring_inverse(sing));
}

} // TEST_SUITE
