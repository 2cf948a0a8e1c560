#pragma once

#include <optional>
#include <string>

#include "confalg/morphisms.hpp"

namespace confalg {

struct EscapeOptions {
  int dmax = 1;
  /// Laurent/Puiseux coefficient window: exponents in [-window, window]
  /// (in steps of 1/D). Ignored over Const.
  int window = 1;
  /// Fix the D^0 part of the images of a perfect 3-dimensional even current
  /// sector (sl2) to the identity, using inner automorphisms.
  bool normalize = true;
  long max_leaves = 20000;
};

struct EscapeResult {
  enum class Outcome { None, Witness, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  std::optional<ConfMorphism> witness;
  bool witness_inverse_verified = false;
  std::string detail;

  int variables = 0;
  int escape_variables = 0;
  long equations = 0;
  long leaves = 0;
  long branches = 0;
  std::string normalized_sector; // names of the fixed sector, if any
};

/// Searches for bracket-preserving maps whose generator images have
/// D-power <= dmax but are not V-stable. Images are expanded with unknown
/// scalar coefficients, the preservation equations on all generator pairs
/// are generated by bilinearity and solved by propagation (linear
/// elimination, vanishing squares and products, univariate quadratics) with
/// branching. "None" means every branch forces all D-power >= 1
/// coefficients to zero. A finitistic probe, not a proof.
EscapeResult bounded_escape_search(TablePtr table, const RingSpec &spec,
                                   EscapeOptions opts = {});

} // namespace confalg
