#include <doctest.h>

#include "confalg/axioms.hpp"
#include "confalg/builders.hpp"
#include "confalg/error.hpp"
#include "confalg/sampling.hpp"
#include "confalg/text.hpp"

using namespace confalg;
using namespace confalg::n4;

namespace {

const RingSpec kConst = RingSpec::constant();
const RingSpec kLaurent = RingSpec::laurent();

ConfElement gen(const RingSpec &s, int g) { return ConfElement::generator(s, g); }
ConfElement term(const RingSpec &s, int g, int m, Scalar c) { return ConfElement::term(s, g, m, c); }

ConfElement random_element(const StructureTable &t, const RingSpec &s, Rng &rng,
                           int max_dpow = 2) {
  ConfElement e(s);
  const int terms = static_cast<int>(rng() % 3) + 1;
  for (int k = 0; k < terms; ++k) {
    const int g = static_cast<int>(rng() % static_cast<unsigned>(t.size()));
    const int m = static_cast<int>(rng() % static_cast<unsigned>(max_dpow + 1));
    e += ConfElement::term(s, g, m, random_ring_element(s, rng));
  }
  return e;
}

// homogeneous random element, as the super sign rules need
ConfElement random_homogeneous(const StructureTable &t, const RingSpec &s, Rng &rng,
                               Parity p) {
  ConfElement e(s);
  for (int k = 0; k < 2; ++k) {
    int g;
    do
      g = static_cast<int>(rng() % static_cast<unsigned>(t.size()));
    while (t.basis().parity(g) != p);
    e += ConfElement::term(s, g, static_cast<int>(rng() % 3), random_ring_element(s, rng));
  }
  return e;
}

std::vector<RingSpec> specs() {
  return {kConst, kLaurent, RingSpec::trunc(4), RingSpec::puiseux(2)};
}

} // namespace

TEST_SUITE("conformal-core") {

TEST_CASE("n-th products on N=4") {
  const StructureTable t = build_N4();
  CHECK(nth_product(t, gen(kConst, L), gen(kConst, L), 1) == term(kConst, L, 0, 2));
  CHECK(nth_product(t, gen(kConst, T1), gen(kConst, T2), 0) == term(kConst, T3, 0, Scalar::i()));
  ConfElement t1t = ConfElement::term(kLaurent, T1, 0, RingElement::monomial(kLaurent, 1, 1));
  CHECK(nth_product(t, t1t, gen(kLaurent, T2), 0) ==
        ConfElement::term(kLaurent, T3, 0, RingElement::monomial(kLaurent, Scalar::i(), 1)));
  // reverse orientation, through skew-symmetry
  CHECK(nth_product(t, gen(kConst, G1), gen(kConst, L), 0) == term(kConst, G1, 1, Scalar(1, 2)));
  CHECK(nth_product(t, gen(kConst, G1), gen(kConst, L), 1) == term(kConst, G1, 0, Scalar(3, 2)));
  CHECK(nth_product(t, gen(kConst, G1), gen(kConst, L), 2).is_zero());
}

TEST_CASE("lambda brackets") {
  const StructureTable t = build_N4();
  LambdaPoly ll = lambda_bracket(t, gen(kConst, L), gen(kConst, L));
  CHECK(ll.coeff(0) == term(kConst, L, 1, 1));
  CHECK(ll.coeff(1) == term(kConst, L, 0, 2));
  CHECK(ll.degree() == 1);
  CHECK(lambda_bracket(t, ConfElement(kConst), gen(kConst, G2)).is_zero());

  const StructureTable k1 = build_KN(1);
  const int xi = *k1.basis().index_of("xi1"), one = *k1.basis().index_of("one");
  LambdaPoly xx = lambda_bracket(k1, gen(kConst, xi), gen(kConst, xi));
  CHECK(xx.degree() == 0);
  CHECK(xx.coeff(0) == term(kConst, one, 0, Scalar(-1, 2)));
}

TEST_CASE("lambda weights are 1/n!") {
  // a D-shifted pair reaches n = 2: (D L)(n) L = -n L(n-1) L
  const StructureTable t = build_N4();
  ConfElement dl = term(kConst, L, 1, 1);
  for (int n = 0; n <= 3; ++n) {
    ConfElement expect =
        n == 0 ? ConfElement(kConst) : nth_product(t, gen(kConst, L), gen(kConst, L), n - 1) * Scalar(-n);
    CHECK(nth_product(t, dl, gen(kConst, L), n) == expect);
  }
  LambdaPoly b = lambda_bracket(t, dl, gen(kConst, L));
  CHECK(b.coeff(2) == term(kConst, L, 0, -2)); // -2 * 2L / 2!
}

TEST_CASE("D-hat") {
  CHECK(apply_dhat(gen(kConst, L)) == term(kConst, L, 1, 1));
  ConfElement lt = ConfElement::term(kLaurent, L, 0, RingElement::monomial(kLaurent, 1, 1));
  CHECK(apply_dhat(lt) == ConfElement::term(kLaurent, L, 1, RingElement::monomial(kLaurent, 1, 1)) +
                              gen(kLaurent, L));
  CHECK(apply_dhat(ConfElement(kLaurent)).is_zero());
}

TEST_CASE("undefined products and mismatches") {
  StructureTable::Builder b("partial", GeneratorBasis({"a", "b"}, {Parity::Even, Parity::Even}));
  b.set(0, 0, 0, gen(kConst, 0));
  StructureTable t = b.build();
  CHECK_THROWS_AS(nth_product(t, gen(kConst, 0), gen(kConst, 1), 0), UndefinedProduct);
  const StructureTable n4t = build_N4();
  CHECK_THROWS_AS(nth_product(n4t, gen(kConst, L), gen(kLaurent, L), 0), SpecMismatch);
  // parity homogeneity is enforced at build time
  StructureTable::Builder bad("bad", GeneratorBasis({"a", "x"}, {Parity::Even, Parity::Odd}));
  bad.set(0, 0, 0, gen(kConst, 1));
  CHECK_THROWS_AS(bad.build(), Error);
}

TEST_CASE("axiom checker on the builtins") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    AxiomReport rep = check_axioms(*builtin_algebra(name));
    CHECK(rep.passed());
    CHECK(rep.results.size() == 4);
  }
}

TEST_CASE("axiom checker catches a flipped su(2) sign") {
  std::string text = print_algebra(build_N4());
  for (const auto &[from, to] : {std::pair<std::string, std::string>{"prod T1 T2 0 = i T3", "prod T1 T2 0 = -i T3"},
                                 {"prod T2 T1 0 = -i T3", "prod T2 T1 0 = i T3"}}) {
    auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), to);
  }
  AxiomReport rep = check_axioms(parse_algebra(text));
  REQUIRE_FALSE(rep.passed());
  const AxiomResult *f = rep.first_failure();
  CHECK(f->axiom == "CS3");
  CHECK(f->counterexample.find("a=T1 b=T2") != std::string::npos);
}

TEST_CASE("axiom checker catches a broken orientation") {
  std::string text = print_algebra(build_N4());
  const std::string from = "prod T2 T1 0 = -i T3";
  auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  text.replace(at, from.size(), "prod T2 T1 0 = i T3");
  AxiomReport rep = check_axioms(parse_algebra(text));
  REQUIRE_FALSE(rep.passed());
  CHECK(rep.first_failure()->axiom == "CS2");
}

TEST_CASE("skew-symmetry is an involution") {
  for (const auto &name : builtin_names()) {
    const StructureTable t = *builtin_algebra(name);
    for (int i = 0; i < t.size(); ++i)
      for (int j = 0; j < t.size(); ++j) {
        const int s = parity_sign(t.basis().parity(i), t.basis().parity(j));
        auto once = skew_transform(t.products(j, i), s);
        auto twice = skew_transform(once, s);
        CAPTURE(name);
        CHECK(once == t.products(i, j));
        CHECK(twice == t.products(j, i));
      }
  }
}

TEST_CASE("sesquilinearity over every ring") {
  Rng rng(301);
  for (const auto &name : {"n4", "k2", "k2-alt"}) {
    const StructureTable t = *builtin_algebra(name);
    for (const auto &s : specs())
      for (int k = 0; k < 20; ++k) {
        ConfElement a = random_element(t, s, rng), b = random_element(t, s, rng);
        CAPTURE(name);
        CAPTURE(s.name());
        for (int n = 0; n <= 3; ++n) {
          ConfElement prev = n > 0 ? nth_product(t, a, b, n - 1) : ConfElement(s);
          CHECK(nth_product(t, apply_dhat(a), b, n) == prev * Scalar(-n));
          CHECK(nth_product(t, a, apply_dhat(b), n) ==
                apply_dhat(nth_product(t, a, b, n)) + prev * Scalar(n));
        }
      }
  }
}

TEST_CASE("right R-linearity and constant collapse") {
  Rng rng(302);
  const StructureTable t = build_N4();
  for (const auto &s : specs())
    for (int k = 0; k < 20; ++k) {
      ConfElement a = random_element(t, s, rng), b = random_element(t, s, rng);
      RingElement r = random_ring_element(s, rng);
      Scalar c = random_scalar(rng);
      for (int n = 0; n <= 2; ++n) {
        CHECK(nth_product(t, a, b * r, n) == nth_product(t, a, b, n) * r);
        CHECK(nth_product(t, a * c, b, n) == nth_product(t, a, b, n) * c);
      }
    }
  // over the constants only the j = 0 term of the base-change sum is left
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j)
      for (int m = 0; m <= 2; ++m)
        for (int l = 0; l <= 2; ++l)
          for (int n = 0; n <= 4; ++n) {
            Scalar c = random_nonzero_scalar(rng), d = random_nonzero_scalar(rng);
            CHECK(nth_product(t, term(kConst, i, m, c), term(kConst, j, l, d), n) ==
                  shifted_product(t, i, m, j, l, n) * (c * d));
          }
}

TEST_CASE("base change against the defining sum") {
  // (g (x) r)(n)(h (x) s) = sum_j (g(n+j) h) (x) delta^(j)(r) s
  Rng rng(303);
  const StructureTable t = build_N4();
  for (const auto &s : {kLaurent, RingSpec::trunc(4), RingSpec::puiseux(2)})
    for (int i = 0; i < t.size(); ++i)
      for (int j = 0; j < t.size(); ++j) {
        RingElement r = random_ring_element(s, rng, 3), u = random_ring_element(s, rng, 3);
        for (int n = 0; n <= 2; ++n) {
          ConfElement expect(s);
          for (int k = 0; n + k <= t.support(i, j); ++k)
            expect += t.product(i, j, n + k).tensor(delta_divided(r, k) * u);
          CHECK(nth_product(t, ConfElement::term(s, i, 0, r), ConfElement::term(s, j, 0, u), n) ==
                expect);
        }
      }
}

TEST_CASE("skew-symmetry and Jacobi on ring-valued elements") {
  // a(n)b = -p(a,b) sum_j (-1)^(j+n) Dhat^(j)(b(n+j)a), checked over R
  Rng rng(304);
  const StructureTable t = build_N4();
  for (const auto &s : specs())
    for (int k = 0; k < 10; ++k) {
      const Parity pa = rng() % 2 ? Parity::Odd : Parity::Even;
      const Parity pb = rng() % 2 ? Parity::Odd : Parity::Even;
      ConfElement a = random_homogeneous(t, s, rng, pa), b = random_homogeneous(t, s, rng, pb);
      for (int n = 0; n <= 3; ++n) {
        ConfElement rhs(s);
        for (int j = 0; j <= 6; ++j) {
          ConfElement x = apply_dhat(nth_product(t, b, a, n + j), j) * inv(factorial(j));
          rhs += x * Scalar((j + n) % 2 ? 1 : -1);
        }
        CHECK(nth_product(t, a, b, n) == rhs * Scalar(parity_sign(pa, pb)));
      }
    }
}

TEST_CASE("lambda-degree bound on N=4 generator pairs") {
  const StructureTable t = build_N4();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      CHECK(lambda_bracket(t, gen(kConst, i), gen(kConst, j)).degree() <= 1);
  CHECK(lambda_bracket(t, gen(kConst, L), gen(kConst, L)).degree() == 1);
}

TEST_CASE("embedding commutes with brackets") {
  Rng rng(305);
  const StructureTable t = build_N4();
  const RingSpec p2 = RingSpec::puiseux(2);
  for (int k = 0; k < 20; ++k) {
    ConfElement a = random_element(t, kLaurent, rng), b = random_element(t, kLaurent, rng);
    CHECK(embed(lambda_bracket(t, a, b), p2) == lambda_bracket(t, embed(a, p2), embed(b, p2)));
    CHECK(embed(apply_dhat(a), p2) == apply_dhat(embed(a, p2)));
  }
}

} // TEST_SUITE
