#pragma once

#include <vector>

#include "decon/sequence.hpp"

namespace decon {

struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Sorted sampling points covering a window: consecutive gaps stay below
/// 2*delta and the endpoints sit within delta of the window edges, so the
/// open delta-balls around the points cover the window. N_X is the maximal
/// point count over unit intervals [k, k+1).
struct SamplingSet {
  std::vector<double> points;
  double delta = 0.0;
  long N_X = 0;
  Window window;
};

SamplingSet validate_set(std::vector<double> points, double delta, Window window);

/// One piecewise-linear bump: 0 outside [q0, q3], ramps on [q0, q1] and
/// [q2, q3], plateau value 1 on [q1, q2].
struct Bump {
  double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0;
  double eval(double x) const;
  double integral() const;
};

/// Nonnegative piecewise-linear partition of unity on the window,
/// subordinate to the cover by (x_k - delta, x_k + delta): bump k plateaus
/// over the Voronoi cell of x_k with crossfades at the cell midpoints.
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(const SamplingSet& set);

  size_t size() const { return bumps_.size(); }
  const Bump& bump(size_t k) const { return bumps_[k]; }
  double sum_at(double x) const;

 private:
  std::vector<Bump> bumps_;
};

}  // namespace decon
