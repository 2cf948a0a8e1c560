#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confalg/conformal.hpp"

namespace confalg {

/// Finite-dimensional Lie superalgebra by structure constants. Brackets not
/// given are filled in by super-antisymmetry; unlisted pairs are zero.
struct LieStructConsts {
  std::vector<std::string> names;
  std::vector<Parity> parities;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Scalar>>> brackets;

  int dim() const { return static_cast<int>(names.size()); }
  /// [x_i, x_j] as a coefficient vector.
  std::vector<Scalar> bracket(int i, int j) const;
  /// First failing (i, j, k) of the super Jacobi identity or antisymmetry.
  std::optional<std::string> jacobi_failure() const;
};

LieStructConsts sl2_consts();     // e, f, h
LieStructConsts abelian_consts(); // a single even generator

StructureTable build_current(const LieStructConsts &g, const std::string &name);

/// Pauli matrix entry sigma^i_{pq}, i in 1..3, p, q in 1..2.
Scalar pauli(int i, int p, int q);

/// Generators L, T1, T2, T3, G1, G2, Gb1, Gb2.
StructureTable build_N4();

namespace n4 {
constexpr int L = 0, T1 = 1, T2 = 2, T3 = 3, G1 = 4, G2 = 5, Gb1 = 6, Gb2 = 7;
}

/// Element of the Grassmann algebra in N variables; monomials are bit masks
/// (bit i-1 for xi_i), written in increasing index order.
class GrassmannElement {
public:
  explicit GrassmannElement(int n) : n_(n) {}
  static GrassmannElement monomial(int n, unsigned mask, const Scalar &c = 1);

  int n() const { return n_; }
  const std::map<unsigned, Scalar> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(unsigned mask, const Scalar &c);

  friend bool operator==(const GrassmannElement &, const GrassmannElement &) = default;

private:
  int n_;
  std::map<unsigned, Scalar> terms_;
};

GrassmannElement grassmann_mul(const GrassmannElement &f, const GrassmannElement &g);
/// Left derivative d/d(xi_i), 1 <= i <= N.
GrassmannElement grassmann_deriv(const GrassmannElement &f, int i);

/// Grassmann monomials in (degree, lexicographic) order.
std::vector<unsigned> grassmann_monomials(int n);
std::string grassmann_name(unsigned mask);

StructureTable build_KN(int n);

/// K2 on dxi (odd), xidxi (even), one (even), xi (odd).
StructureTable build_K2_alt();

namespace k2alt {
constexpr int dxi = 0, xidxi = 1, one = 2, xi = 3;
}

/// n4, cur-sl2, cur-abelian, k1, k2, k3, k2-alt
std::optional<StructureTable> builtin_algebra(const std::string &name);
std::vector<std::string> builtin_names();

} // namespace confalg
