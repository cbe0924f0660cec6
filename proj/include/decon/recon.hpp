#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "decon/sampling_set.hpp"
#include "decon/spline_model.hpp"

namespace decon {

struct OscillationEstimate {
  double certified = 0.0;       // (2 ceil(delta)+1) ||phi'||_{W(L^q,l^1)} delta^{1-1/q}
  double direct_estimate = 0.0; // grid sup of osc_delta(phi), per cell, l^1
  double deriv_amalgam = 0.0;   // numeric ||phi'||_{W(L^q, l^1)}
};

// Oscillation bound for the generator at density radius delta; the direct
// grid estimate always sits below the certified value.
OscillationEstimate oscillation_bound(const Generator& gen, double delta, double q,
                                      double grid_dx = 1.0 / 512);

/// Windowed experiment context: coefficients live on [k_lo, k_hi], the
/// window is padded by a margin covering the dual-window truncation radius,
/// and norms are evaluated on the padded grid.
struct ReconContext {
  const SplineModel* model = nullptr;
  Window window;
  double dx = 1.0 / 64;
  long k_lo = 0, k_hi = 0;
  long interior_margin = 0;

  double grid_lo() const;
  double grid_hi() const;
};

ReconContext make_recon_context(const SplineModel& model, Window window,
                                double dx = 1.0 / 64);

// Z: exact point evaluations of f = sum_k c_k phi(.-k) at the sample points.
std::vector<cplx> operator_Z(const ReconContext& ctx, const SamplingSet& set,
                             const WeightedSequence& coeffs);

// I: quasi-interpolant sum_k c_k g_k sampled on the context grid.
SampledFunction operator_I(const ReconContext& ctx, const SamplingSet& set,
                           const PartitionOfUnity& pou,
                           const std::vector<cplx>& c);

// P: biorthogonal projection onto the spline space, returned in coefficients.
WeightedSequence operator_P(const ReconContext& ctx, const SampledFunction& f);

struct ReconOptions {
  double p = 2.0;
  double tol = 1e-10;
  int max_iter = 200;
  double certified_rho = std::numeric_limits<double>::infinity();
  bool allow_uncertified = false;  // run on an empirical gamma estimate
};

struct ReconResult {
  WeightedSequence coeffs;
  int iterations = 0;
  std::vector<double> error_history;  // ||c_{n+1} - c_n||_p
  double observed_ratio = 0.0;        // max consecutive error ratio
  bool converged = false;
};

// Fixed-point iteration c <- c + P I (samples - Z c). Requires a certified
// contraction number rho < 1 for the model/delta pair unless the caller
// explicitly opts into the uncertified path.
ReconResult reconstruct(const ReconContext& ctx, const SamplingSet& set,
                        const PartitionOfUnity& pou,
                        const std::vector<cplx>& samples,
                        const ReconOptions& opts);

// Power-iteration estimate of ||Id - PIZ|| on interior coefficients.
// Not certified; used to label reconstruction runs at uncertified density.
double estimate_gamma(const ReconContext& ctx, const SamplingSet& set,
                      const PartitionOfUnity& pou, int iters, uint64_t seed);

}  // namespace decon
