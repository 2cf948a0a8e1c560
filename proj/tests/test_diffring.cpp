#include <doctest.h>

#include "confalg/error.hpp"
#include "confalg/sampling.hpp"

using namespace confalg;

namespace {

const RingSpec kConst = RingSpec::constant();
const RingSpec kLaurent = RingSpec::laurent();

RingElement mono(const RingSpec &s, Scalar c, long num) { return RingElement::monomial(s, c, num); }
RingElement lit(const RingSpec &s, const std::string &text) { return parse_ring_element(text, s); }

std::vector<RingSpec> all_specs() {
  return {kConst, kLaurent, RingSpec::puiseux(2), RingSpec::puiseux(3), RingSpec::trunc(4),
          RingSpec::trunc(2)};
}

} // namespace

TEST_SUITE("diffring") {

TEST_CASE("ring arithmetic") {
  CHECK(mono(kLaurent, 1, 1) * mono(kLaurent, 1, -1) == RingElement(kLaurent, 1));
  const RingSpec t3 = RingSpec::trunc(3);
  CHECK(lit(t3, "1 + t") * lit(t3, "1 + t^2") == lit(t3, "1 + t + t^2"));
  const RingSpec p2 = RingSpec::puiseux(2);
  CHECK(lit(p2, "t^1/2") * lit(p2, "t^(1/2)") == lit(p2, "t"));
  CHECK_THROWS_AS(RingElement(kLaurent, 1) + RingElement(kConst, 1), SpecMismatch);
}

TEST_CASE("derivation examples") {
  CHECK(delta(lit(kLaurent, "t^3")) == lit(kLaurent, "3 t^2"));
  CHECK(delta(lit(kLaurent, "t^-1")) == lit(kLaurent, "-t^-2"));
  CHECK(delta(RingElement(kConst, 7)).is_zero());
  const RingSpec p2 = RingSpec::puiseux(2);
  CHECK(delta(lit(p2, "t^(1/2)")) == lit(p2, "1/2 t^(-1/2)"));
}

TEST_CASE("divided powers") {
  CHECK(delta_divided(lit(kLaurent, "t^3"), 2) == lit(kLaurent, "3 t"));
  RingElement r = lit(kLaurent, "2 t^-2 + i t");
  CHECK(delta_divided(r, 0) == r);
  CHECK(delta_divided(lit(kLaurent, "t^3"), 4).is_zero());
}

TEST_CASE("constants") {
  CHECK(is_constant(RingElement(kLaurent, 5)));
  CHECK_FALSE(is_constant(lit(kLaurent, "t")));
  CHECK_FALSE(is_constant(lit(RingSpec::trunc(2), "1 + t")));
}

TEST_CASE("units") {
  CHECK(*inverse_if_unit(lit(kLaurent, "2 t^2")) == lit(kLaurent, "1/2 t^-2"));
  const RingSpec t3 = RingSpec::trunc(3);
  CHECK(*inverse_if_unit(lit(t3, "1 - t")) == lit(t3, "1 + t + t^2"));
  CHECK_FALSE(inverse_if_unit(lit(kLaurent, "1 + t")));
  CHECK_FALSE(inverse_if_unit(lit(t3, "t")));
  CHECK_FALSE(inverse_if_unit(RingElement(kConst)));
}

TEST_CASE("inclusions") {
  const RingSpec p2 = RingSpec::puiseux(2);
  CHECK(embed(lit(kLaurent, "t"), p2) == lit(p2, "t"));
  CHECK(embed(RingElement(kConst, 3), kLaurent) == RingElement(kLaurent, 3));
  CHECK_THROWS_AS(embed(lit(RingSpec::trunc(2), "t"), kLaurent), NoCanonicalMap);
  CHECK_THROWS_AS(embed(lit(kLaurent, "t"), kConst), NoCanonicalMap);
}

TEST_CASE("spec syntax") {
  CHECK(RingSpec::parse("puiseux:3") == RingSpec::puiseux(3));
  CHECK(RingSpec::parse("trunc:4").name() == "trunc:4");
  CHECK_THROWS_AS(RingSpec::parse("trunc:0"), Error);
  CHECK_THROWS_AS(RingSpec::parse("poly"), Error);
}

TEST_CASE("literal grammar") {
  const RingSpec p2 = RingSpec::puiseux(2);
  CHECK(lit(kLaurent, "t") == mono(kLaurent, 1, 1));
  CHECK(lit(kLaurent, "1/2") == RingElement(kLaurent, Scalar(1, 2)));
  CHECK(lit(p2, "-3 t^-3/2") == mono(p2, -3, -3));
  CHECK(lit(kLaurent, "(1 + i) t^2 - t") == mono(kLaurent, Scalar(1, mpq_class(1)), 2) - mono(kLaurent, 1, 1));
  CHECK_THROWS_AS(lit(kLaurent, "t^(1/2)"), Error);
  CHECK_THROWS_AS(lit(kConst, "t"), Error);
  CHECK(lit(RingSpec::trunc(2), "t^3").is_zero());
}

TEST_CASE("to_string parses back") {
  Rng rng(201);
  for (const auto &s : all_specs())
    for (int k = 0; k < 50; ++k) {
      RingElement r = random_ring_element(s, rng, 3);
      CHECK(lit(s, r.to_string()) == r);
    }
}

TEST_CASE("Leibniz rule and linearity, all specs") {
  Rng rng(202);
  for (const auto &s : all_specs())
    for (int k = 0; k < 60; ++k) {
      RingElement r = random_ring_element(s, rng, 3), u = random_ring_element(s, rng, 3);
      Scalar a = random_scalar(rng), b = random_scalar(rng);
      CAPTURE(s.name());
      CHECK(delta(r * u) == delta(r) * u + r * delta(u));
      CHECK(delta(a * r + b * u) == a * delta(r) + b * delta(u));
      // divided powers: j! delta^(j) = delta^j
      CHECK(delta_divided(r, 2) * Scalar(2) == delta(delta(r)));
    }
}

TEST_CASE("embedding commutes with the derivation") {
  Rng rng(203);
  for (int d : {1, 2, 3, 4})
    for (int k = 0; k < 40; ++k) {
      RingElement r = random_ring_element(kLaurent, rng, 3);
      CHECK(embed(delta(r), RingSpec::puiseux(d)) == delta(embed(r, RingSpec::puiseux(d))));
      RingElement c = random_ring_element(kConst, rng);
      CHECK(embed(delta(c), RingSpec::puiseux(d)) == delta(embed(c, RingSpec::puiseux(d))));
    }
}

TEST_CASE("inverse round trip") {
  Rng rng(204);
  for (const auto &s : all_specs())
    for (int k = 0; k < 60; ++k) {
      RingElement r = random_ring_element(s, rng, 2);
      if (auto inv = inverse_if_unit(r)) {
        CHECK(r * *inv == RingElement(s, 1));
        CHECK(*inv * r == RingElement(s, 1));
      }
    }
  // monomials are always recognized
  for (int k = -3; k <= 3; ++k)
    CHECK(inverse_if_unit(mono(RingSpec::puiseux(2), Scalar(3, 2), k)));
}

TEST_CASE("square roots of one are constant") {
  Rng rng(205);
  for (const auto &s : all_specs())
    for (int k = 0; k < 200; ++k) {
      RingElement r = random_ring_element(s, rng, 2);
      if (r * r == RingElement(s, 1))
        CHECK(delta(r).is_zero());
    }
}

TEST_CASE("Trunc: r^2 = 1 only for r = +-1") {
  // degree by degree: c0^2 = 1, then 2 c0 c_k + sum_{0<j<k} c_j c_{k-j} = 0
  // fixes c_k = 0 for every k >= 1.
  for (int n = 1; n <= 6; ++n) {
    for (Scalar c0 : {Scalar(1), Scalar(-1)}) {
      std::vector<Scalar> c{c0};
      for (int k = 1; k < n; ++k) {
        Scalar s;
        for (int j = 1; j < k; ++j)
          s += c[static_cast<size_t>(j)] * c[static_cast<size_t>(k - j)];
        c.push_back(-s / (Scalar(2) * c0));
        CHECK(c.back().is_zero());
      }
    }
  }
  // exhaustive over a coefficient grid in Trunc(3)
  const RingSpec t3 = RingSpec::trunc(3);
  const std::vector<Scalar> grid{0, 1, -1, 2, Scalar(1, 2), Scalar::i(), -Scalar::i()};
  int solutions = 0;
  for (const auto &a : grid)
    for (const auto &b : grid)
      for (const auto &d : grid) {
        RingElement r = mono(t3, a, 0) + mono(t3, b, 1) + mono(t3, d, 2);
        if (r * r == RingElement(t3, 1)) {
          ++solutions;
          CHECK((r == RingElement(t3, 1) || r == RingElement(t3, -1)));
          CHECK(delta(r).is_zero());
        }
      }
  CHECK(solutions == 2);
}

} // TEST_SUITE
