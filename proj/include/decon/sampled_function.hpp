#pragma once

#include <complex>
#include <vector>

#include "decon/sequence.hpp"

namespace decon {

/// Uniform samples of a function on [x0, x0 + dx*(n-1)]. Norms are grid
/// approximations (composite Simpson per unit cell, sup over samples for
/// p = inf) with the resolution carried by the object itself.
struct SampledFunction {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<cplx> v;

  size_t size() const { return v.size(); }
  double x_at(size_t i) const { return x0 + dx * static_cast<double>(i); }
  double x_end() const { return v.empty() ? x0 : x_at(v.size() - 1); }
};

// L^p norm over the sampled range; p in [1, inf].
double lp_norm(const SampledFunction& f, double p);

// Amalgam norm ||f||_{W(L^p, l^q)}: per-cell L^p over unit cells [j, j+1),
// then l^q across cells.
double amalgam_norm(const SampledFunction& f, double p, double q);

// l^p norm of a coefficient sequence (p in [1, inf]).
double lp_norm(const WeightedSequence& c, double p);
double lp_norm(const std::vector<cplx>& c, double p);

}  // namespace decon
