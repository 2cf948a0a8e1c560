#pragma once

#include <map>
#include <optional>
#include <string>

#include "confalg/scalar.hpp"

namespace confalg {

/// A differential ring (R, d) from a fixed menu:
///   Const       (k, 0)
///   Laurent     (k[t, 1/t], d/dt)
///   Puiseux(D)  (k[t^(1/D), t^(-1/D)], d/dt)
///   Trunc(N)    (k[t]/(t^N), t d/dt)
struct RingSpec {
  enum class Kind { Const, Laurent, Puiseux, Trunc };

  Kind kind = Kind::Const;
  int param = 1; // D for Puiseux, N for Trunc, 1 otherwise

  static RingSpec constant() { return {Kind::Const, 1}; }
  static RingSpec laurent() { return {Kind::Laurent, 1}; }
  static RingSpec puiseux(int d);
  static RingSpec trunc(int n);

  /// Exponents are stored as integer numerators over this denominator.
  int denominator() const { return kind == Kind::Puiseux ? param : 1; }

  /// False for Trunc, which has nilpotents.
  bool is_integral_domain() const { return kind != Kind::Trunc; }

  /// `const`, `laurent`, `puiseux:D`, `trunc:N`
  std::string name() const;
  static RingSpec parse(const std::string &text);

  friend bool operator==(const RingSpec &, const RingSpec &) = default;
};

/// Sparse element sum c_q t^q of a RingSpec. The map key is the exponent
/// numerator q*D; zero coefficients are never stored.
class RingElement {
public:
  using Terms = std::map<long, Scalar>;

  RingElement() = default;
  explicit RingElement(RingSpec spec) : spec_(spec) {}
  RingElement(RingSpec spec, const Scalar &c);

  /// c * t^(num / D). Throws InvalidArgument on an exponent the ring
  /// does not have; in Trunc(N) exponents >= N give zero.
  static RingElement monomial(RingSpec spec, const Scalar &c, long num);

  const RingSpec &spec() const { return spec_; }
  const Terms &terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// The t^0 coefficient.
  Scalar constant_term() const;
  /// Nonzero only in degree 0.
  bool is_scalar() const;

  RingElement operator-() const;
  RingElement &operator+=(const RingElement &o);
  RingElement &operator-=(const RingElement &o);
  RingElement &operator*=(const Scalar &c);

  friend RingElement operator+(RingElement a, const RingElement &b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement &b) { return a -= b; }
  friend RingElement operator*(const RingElement &a, const RingElement &b);
  friend RingElement operator*(RingElement a, const Scalar &c) { return a *= c; }
  friend RingElement operator*(const Scalar &c, RingElement a) { return a *= c; }

  friend bool operator==(const RingElement &a, const RingElement &b) {
    return a.spec_ == b.spec_ && a.terms_ == b.terms_;
  }

  /// Adds c * t^(num/D) in place.
  void add_term(long num, const Scalar &c);

  std::string to_string() const;

private:
  RingSpec spec_;
  Terms terms_;
};

RingElement ring_add(const RingElement &a, const RingElement &b);
RingElement ring_mul(const RingElement &a, const RingElement &b);
RingElement ring_neg(const RingElement &a);

/// The derivation: zero on Const, t d/dt on Trunc, d/dt otherwise.
RingElement delta(const RingElement &r);

/// delta^j(r) / j!
RingElement delta_divided(const RingElement &r, int j);

bool is_constant(const RingElement &r);

/// Two-sided inverse when one is found. Laurent/Puiseux units are
/// recognized by a bounded division attempt, which is sound but may miss
/// units whose inverse has support wider than twice the input's.
std::optional<RingElement> inverse_if_unit(const RingElement &r);

/// Image under the canonical inclusions Const -> any and
/// Laurent -> Puiseux(D). Throws NoCanonicalMap otherwise.
RingElement embed(const RingElement &r, const RingSpec &target);

/// Ring literal: signed sum of `<scalar> t^<q>` terms.
RingElement parse_ring_element(const std::string &text, const RingSpec &spec);

std::string exponent_string(long num, int den);

} // namespace confalg
