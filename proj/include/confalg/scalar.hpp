#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace confalg {

/// Exact element re + im*i of the Gaussian rationals Q(i).
///
/// Both parts are kept canonical (lowest terms, positive denominator), so
/// structural equality is field equality.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : re_(v) {} // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class &re, const mpq_class &im = 0);
  Scalar(long num, long den);

  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class &re() const { return re_; }
  const mpq_class &im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  Scalar &operator/=(const Scalar &o);

  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }

  friend bool operator==(const Scalar &a, const Scalar &b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Lexicographic order on (re, im). Not a field order; used for
  /// deterministic tie-breaks only.
  friend bool lex_less(const Scalar &a, const Scalar &b) {
    if (a.re_ != b.re_)
      return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  Scalar conj() const { return Scalar(re_, -im_); }
  Scalar inv() const; // throws DivisionByZero

  std::string to_string() const;

private:
  mpq_class re_;
  mpq_class im_;
};

Scalar add(const Scalar &a, const Scalar &b);
Scalar mul(const Scalar &a, const Scalar &b);
Scalar inv(const Scalar &a);

/// A square root of `a` inside Q(i), if one exists. Of the two roots the
/// lexicographically smaller under (re, im) is returned.
std::optional<Scalar> sqrt_if_exists(const Scalar &a);

/// Square root of a nonnegative rational when it is rational.
std::optional<mpq_class> rational_sqrt(const mpq_class &q);

/// n! as a scalar.
Scalar factorial(int n);
Scalar binomial(int n, int k);

/// Parses the scalar literal grammar: `p`, `p/q`, `i`, `p/q i` and signed
/// sums of those, optionally parenthesized. Throws ParseError.
Scalar parse_scalar(const std::string &text);

std::ostream &operator<<(std::ostream &os, const Scalar &s);

} // namespace confalg
