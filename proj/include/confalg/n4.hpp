#pragma once

#include <optional>
#include <string>

#include "confalg/conformal.hpp"

namespace confalg {

/// 2x2 matrix [[a, b], [c, d]] over a differential ring.
struct Mat2 {
  RingElement a, b, c, d;

  Mat2() = default;
  Mat2(RingElement a, RingElement b, RingElement c, RingElement d);

  static Mat2 identity(const RingSpec &spec);
  static Mat2 zero(const RingSpec &spec);
  static Mat2 scalar(const RingSpec &spec, const Scalar &s);
  /// sigma^i, i = 1, 2, 3
  static Mat2 pauli(const RingSpec &spec, int i);

  const RingSpec &spec() const { return a.spec(); }
  RingElement det() const;
  RingElement trace() const;
  bool is_constant() const;

  Mat2 operator-() const;
  Mat2 &operator+=(const Mat2 &o);
  Mat2 &operator-=(const Mat2 &o);
  friend Mat2 operator+(Mat2 x, const Mat2 &y) { return x += y; }
  friend Mat2 operator-(Mat2 x, const Mat2 &y) { return x -= y; }
  friend Mat2 operator*(const Mat2 &x, const Mat2 &y);
  friend Mat2 operator*(const RingElement &r, const Mat2 &x);
  friend Mat2 operator*(const Scalar &s, const Mat2 &x);
  friend bool operator==(const Mat2 &, const Mat2 &) = default;

  std::string to_string() const;
};

Mat2 mat_delta(const Mat2 &m);
/// M^dagger = [[-d, b], [c, -a]]
Mat2 dagger(const Mat2 &m);
Mat2 commutator(const Mat2 &x, const Mat2 &y);
/// Two-sided inverse when det is a unit.
std::optional<Mat2> mat_inverse(const Mat2 &m);
Mat2 embed(const Mat2 &m, const RingSpec &target);

/// `[[a,b],[c,d]]` with ring-literal entries.
Mat2 parse_matrix(const std::string &text, const RingSpec &spec);

/// L(r) + T(X) + G(M) with tr X = 0.
class LTGTriple {
public:
  LTGTriple(RingElement r, Mat2 x, Mat2 m); // throws on nonzero trace
  static LTGTriple zero(const RingSpec &spec);

  const RingElement &r() const { return r_; }
  const Mat2 &X() const { return x_; }
  const Mat2 &M() const { return m_; }
  const RingSpec &spec() const { return r_.spec(); }

  friend bool operator==(const LTGTriple &, const LTGTriple &) = default;

private:
  RingElement r_;
  Mat2 x_;
  Mat2 m_;
};

ConfElement L_of(const RingElement &r);
ConfElement T_of(const Mat2 &x); // throws on nonzero trace
ConfElement G_of(const Mat2 &m);

ConfElement encode(const LTGTriple &t);
/// Inverse of encode; throws InvalidArgument outside V (x) R.
LTGTriple decode(const ConfElement &e);

/// Sum of the matrix-form bracket relations, including the reverse
/// orientations obtained by skew-symmetry.
LambdaPoly structured_bracket(const LTGTriple &u, const LTGTriple &v);

} // namespace confalg
