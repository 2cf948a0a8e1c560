#include <doctest.h>

#include "confalg/error.hpp"
#include "confalg/sampling.hpp"

using namespace confalg;

namespace {
Scalar q(long n, long d = 1) { return Scalar(n, d); }
Scalar c(long re, long im) { return Scalar(mpq_class(re), mpq_class(im)); }
} // namespace

TEST_SUITE("scalars") {

TEST_CASE("addition") {
  CHECK(q(1, 2) + q(1, 2) == q(1));
  CHECK(Scalar::i() + (-Scalar::i()) == Scalar());
  Scalar a(mpq_class(1, 3), mpq_class(1, 2)), b(mpq_class(1, 6), mpq_class(1, 2));
  CHECK(a + b == Scalar(mpq_class(1, 2), mpq_class(1)));
}

TEST_CASE("multiplication") {
  CHECK(Scalar::i() * Scalar::i() == q(-1));
  CHECK(c(1, 1) * c(1, -1) == q(2));
  CHECK((Scalar() * c(3, -7)).is_zero());
}

TEST_CASE("inverse") {
  CHECK(inv(q(2)) == q(1, 2));
  CHECK(inv(Scalar::i()) == -Scalar::i());
  CHECK(inv(c(1, 1)) == Scalar(mpq_class(1, 2), mpq_class(-1, 2)));
  CHECK_THROWS_AS(inv(Scalar()), DivisionByZero);
}

TEST_CASE("canonical form") {
  Scalar a(mpq_class(2, -4));
  CHECK(a == q(-1, 2));
  CHECK(a.re().get_den() == 2);
  CHECK(q(6, 4).to_string() == "3/2");
}

TEST_CASE("square roots") {
  // the lexicographically smaller root
  CHECK(*sqrt_if_exists(q(4)) == q(-2));
  CHECK(*sqrt_if_exists(q(-1)) == -Scalar::i());
  CHECK(*sqrt_if_exists(c(0, 2)) == c(-1, -1));
  CHECK(*sqrt_if_exists(q(9, 4)) == q(-3, 2));
  CHECK(*sqrt_if_exists(Scalar()) == Scalar());
  CHECK_FALSE(sqrt_if_exists(q(2)));
  CHECK_FALSE(sqrt_if_exists(Scalar::i()));
}

TEST_CASE("2 has no square root: (a + b i)^2 = 2 over small rationals") {
  // a^2 - b^2 = 2 and 2ab = 0
  for (long p = -30; p <= 30; ++p)
    for (long d = 1; d <= 12; ++d) {
      mpq_class a(p, d);
      a.canonicalize();
      CHECK(a * a != 2);
      CHECK(-a * a != 2);
    }
}

TEST_CASE("field axioms on random triples") {
  Rng rng(101);
  for (int k = 0; k < 300; ++k) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), d = random_scalar(rng);
    CHECK((a + b) + d == a + (b + d));
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK(a * (b + d) == a * b + a * d);
    if (!a.is_zero()) {
      CHECK(a * inv(a) == q(1));
      CHECK(inv(a) * a == q(1));
    }
  }
}

TEST_CASE("sqrt squares back") {
  Rng rng(102);
  int found = 0;
  for (int k = 0; k < 300; ++k) {
    Scalar a = random_scalar(rng);
    Scalar sq = a * a;
    auto r = sqrt_if_exists(sq);
    REQUIRE(r);
    CHECK(*r * *r == sq);
    CHECK((*r == a || *r == -a));
    if (auto s = sqrt_if_exists(a)) {
      CHECK(*s * *s == a);
      ++found;
    }
  }
  CHECK(found > 0);
}

TEST_CASE("literal grammar") {
  CHECK(parse_scalar("3") == q(3));
  CHECK(parse_scalar("-3/6") == q(-1, 2));
  CHECK(parse_scalar("i") == Scalar::i());
  CHECK(parse_scalar("1/2 i") == Scalar(0, mpq_class(1, 2)));
  CHECK(parse_scalar("1/2 + 3 i") == Scalar(mpq_class(1, 2), 3));
  CHECK(parse_scalar("-2 - 1/3 i") == Scalar(-2, mpq_class(-1, 3)));
  CHECK(parse_scalar("( -2-1/3i )") == Scalar(-2, mpq_class(-1, 3)));
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("x"), ParseError);
  CHECK_THROWS_AS(parse_scalar(""), ParseError);
}

TEST_CASE("to_string parses back") {
  Rng rng(103);
  for (int k = 0; k < 200; ++k) {
    Scalar a = random_scalar(rng);
    CHECK(parse_scalar(a.to_string()) == a);
  }
}

} // TEST_SUITE
