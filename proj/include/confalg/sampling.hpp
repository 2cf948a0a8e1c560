#pragma once

#include <random>

#include "confalg/morphisms.hpp"

namespace confalg {

using Rng = std::mt19937_64;

/// Small Gaussian rationals: re/im numerators in [-3, 3], denominators 1..3.
Scalar random_scalar(Rng &rng);
Scalar random_nonzero_scalar(Rng &rng);
/// Up to max_terms monomials with exponents in a small window of the ring.
RingElement random_ring_element(const RingSpec &spec, Rng &rng, int max_terms = 2);
Mat2 random_mat2(const RingSpec &spec, Rng &rng);
Mat2 random_traceless(const RingSpec &spec, Rng &rng);
LTGTriple random_ltg(const RingSpec &spec, Rng &rng);
/// [[1,r],[0,1]] [[1,0],[s,1]] diag(c, 1/c), c a nonzero constant.
Mat2 random_sl2(const RingSpec &spec, Rng &rng);
/// A over the ring, B over the constants.
SL2Pair random_sl2_pair(const RingSpec &spec, Rng &rng);

} // namespace confalg
