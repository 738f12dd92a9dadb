#pragma once

#include <cstdint>
#include <random>

#include "bvperiod/bv.hpp"

namespace bvperiod {

using Rng = std::mt19937_64;

// Small nonzero rational in [-bound, bound] with denominator up to 3.
Scalar random_scalar(Rng& rng, int bound = 5);

// Random element of the given tri-grading with at most max_terms terms.
// May return zero when the graded piece is empty.
Poly random_homogeneous(Rng& rng, const BVComplex& bv, const Grading& g, int max_terms = 4);

// Random polynomial in the even slots of total degree exactly `degree`.
Poly random_even_degree(Rng& rng, const std::vector<int>& slots, unsigned degree,
                        int max_terms = 4);

// Random tri-grading with ghost in {-2,-1,0} and small charge/weight.
Grading random_grading(Rng& rng, const BVComplex& bv);

}  // namespace bvperiod
