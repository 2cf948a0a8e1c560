#pragma once

#include <optional>
#include <string>
#include <vector>

#include "confalg/conformal.hpp"

namespace confalg {

struct AxiomBounds {
  int n_max = 6;
  int m_max = 4;
  int dpow_max = 2;
};

struct AxiomResult {
  std::string axiom; // "CS0" .. "CS3"
  bool passed = true;
  long checks = 0;
  std::string counterexample; // first failure, empty when passed
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool passed() const;
  /// First failing result, if any.
  const AxiomResult *first_failure() const;
};

/// CS0-CS3 over the constant ring on generators:
///   CS0  every ordered pair is defined and a(n)b = 0 for n > n_max
///   CS1  (D a)(n) b = -n a(n-1) b and a(n)(D b) = D(a(n) b) + n a(n-1) b,
///        for D-powers up to dpow_max
///   CS2  a(n) b = -p(a,b) sum_j (-1)^(j+n) D^(j)(b(n+j) a), n <= n_max
///   CS3  a(m)(b(n) c) = sum_j C(m,j) (a(j) b)(m+n-j) c + p(a,b) b(n)(a(m) c)
AxiomReport check_axioms(const StructureTable &table, AxiomBounds bounds = {});

} // namespace confalg
