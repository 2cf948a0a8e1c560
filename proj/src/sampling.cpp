#include "confalg/sampling.hpp"

namespace confalg {

namespace {

long uniform(Rng &rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

} // namespace

Scalar random_scalar(Rng &rng) {
  mpq_class re(uniform(rng, -3, 3), uniform(rng, 1, 3));
  re.canonicalize();
  mpq_class im = 0;
  if (uniform(rng, 0, 3) == 0) {
    im = mpq_class(uniform(rng, -2, 2), uniform(rng, 1, 2));
    im.canonicalize();
  }
  return Scalar(re, im);
}

Scalar random_nonzero_scalar(Rng &rng) {
  Scalar s;
  while (s.is_zero())
    s = random_scalar(rng);
  return s;
}

RingElement random_ring_element(const RingSpec &spec, Rng &rng, int max_terms) {
  long lo = 0, hi = 0;
  switch (spec.kind) {
  case RingSpec::Kind::Const:
    break;
  case RingSpec::Kind::Laurent:
    lo = -2;
    hi = 2;
    break;
  case RingSpec::Kind::Puiseux:
    lo = -2L * spec.param;
    hi = 2L * spec.param;
    break;
  case RingSpec::Kind::Trunc:
    hi = spec.param - 1;
    break;
  }
  RingElement r(spec);
  const long terms = uniform(rng, 1, max_terms);
  for (long k = 0; k < terms; ++k)
    r += RingElement::monomial(spec, random_scalar(rng), uniform(rng, lo, hi));
  return r;
}

Mat2 random_mat2(const RingSpec &spec, Rng &rng) {
  return Mat2(random_ring_element(spec, rng), random_ring_element(spec, rng),
              random_ring_element(spec, rng), random_ring_element(spec, rng));
}

Mat2 random_traceless(const RingSpec &spec, Rng &rng) {
  RingElement a = random_ring_element(spec, rng);
  return Mat2(a, random_ring_element(spec, rng), random_ring_element(spec, rng), -a);
}

LTGTriple random_ltg(const RingSpec &spec, Rng &rng) {
  return LTGTriple(random_ring_element(spec, rng), random_traceless(spec, rng),
                   random_mat2(spec, rng));
}

Mat2 random_sl2(const RingSpec &spec, Rng &rng) {
  const RingElement one(spec, Scalar(1)), zero(spec);
  const Scalar c = random_nonzero_scalar(rng);
  Mat2 upper(one, random_ring_element(spec, rng), zero, one);
  Mat2 lower(one, zero, random_ring_element(spec, rng), one);
  Mat2 diag(RingElement(spec, c), zero, zero, RingElement(spec, Scalar(1) / c));
  return upper * lower * diag;
}

SL2Pair random_sl2_pair(const RingSpec &spec, Rng &rng) {
  Mat2 b = random_sl2(RingSpec::constant(), rng);
  return SL2Pair(random_sl2(spec, rng), embed(b, spec));
}

} // namespace confalg
