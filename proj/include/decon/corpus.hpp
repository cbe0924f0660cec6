#pragma once

#include <random>

#include "decon/sampling_set.hpp"
#include "decon/sequence.hpp"
#include "decon/symbol.hpp"

namespace decon::corpus {

// Deterministic random inputs shared by the verification suite and tests.

cplx cnormal(std::mt19937_64& rng);

// i.i.d. complex Gaussian entries over a centered 1-d box.
WeightedSequence gaussian_1d(std::mt19937_64& rng, int support);

// 2-d complex Gaussian entries damped by (1 + |k|_1)^-3 so the certified
// symbol margins stay workable at moderate grids.
WeightedSequence enveloped_2d(std::mt19937_64& rng, int s1, int s2);

struct ConditionedDraw {
  WeightedSequence a;
  DeconvResult dec;
};

// Draw until the certified range passes A >= ratio_min * B and the inverse
// resolves on a grid ladder; rejected draws are discarded deterministically.
ConditionedDraw conditioned_1d(std::mt19937_64& rng, int max_support,
                               double ratio_min, double trunc_tol);
ConditionedDraw conditioned_2d(std::mt19937_64& rng, int max_support,
                               double ratio_min, double trunc_tol);

// Strictly increasing jittered lattice w.lo + spacing*(i + 1/2) + jitter,
// |jitter| <= amp < spacing/2, covering the window.
std::vector<double> jittered_points(std::mt19937_64& rng, Window w,
                                    double spacing, double amp);

// Complex Gaussian coefficients on [k_lo, k_hi].
WeightedSequence random_coeffs(std::mt19937_64& rng, long k_lo, long k_hi);

}  // namespace decon::corpus
