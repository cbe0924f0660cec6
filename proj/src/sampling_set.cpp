#include "decon/sampling_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "decon/errors.hpp"

namespace decon {

SamplingSet validate_set(std::vector<double> points, double delta, Window window) {
  require(!points.empty(), ErrorCode::not_dense, "empty sampling set");
  require(delta > 0.0, ErrorCode::validation, "delta must be > 0");
  require(window.hi > window.lo, ErrorCode::validation, "empty window");
  for (double x : points)
    require(std::isfinite(x), ErrorCode::validation, "sample points must be finite");
  for (size_t i = 0; i + 1 < points.size(); ++i)
    require(points[i] < points[i + 1], ErrorCode::validation,
            "sample points must be strictly increasing");

  auto not_dense = [](const std::string& what, double where) {
    std::ostringstream os;
    os << "set is not delta-dense: " << what << " near x = " << where;
    fail(ErrorCode::not_dense, os.str());
  };
  if (points.front() - window.lo >= delta)
    not_dense("left window edge uncovered", window.lo);
  if (window.hi - points.back() >= delta)
    not_dense("right window edge uncovered", window.hi);
  for (size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i + 1] - points[i] >= 2.0 * delta)
      not_dense("gap of " + std::to_string(points[i + 1] - points[i]),
                points[i]);

  long n_x = 0;
  size_t i = 0;
  for (long cell = static_cast<long>(std::floor(points.front()));
       i < points.size(); ++cell) {
    long count = 0;
    while (i < points.size() && points[i] < static_cast<double>(cell + 1)) {
      if (points[i] >= static_cast<double>(cell)) ++count;
      ++i;
    }
    n_x = std::max(n_x, count);
  }
  return SamplingSet{std::move(points), delta, std::max(n_x, 1L), window};
}

double Bump::eval(double x) const {
  if (x <= q0 || x >= q3) return 0.0;
  if (x < q1) return (x - q0) / (q1 - q0);
  if (x <= q2) return 1.0;
  return (q3 - x) / (q3 - q2);
}

double Bump::integral() const {
  return (q2 - q1) + 0.5 * (q1 - q0) + 0.5 * (q3 - q2);
}

PartitionOfUnity::PartitionOfUnity(const SamplingSet& set) {
  const std::vector<double>& x = set.points;
  const double delta = set.delta;
  size_t n = x.size();
  bumps_.resize(n);

  // Crossfade half-widths at the Voronoi midpoints. Complementary ramps at
  // a shared midpoint sum to 1 exactly; widths stay clear of both the
  // neighbour midpoints and the subordination radius.
  std::vector<double> mid(n >= 1 ? n - 1 : 0), w(n >= 1 ? n - 1 : 0);
  for (size_t i = 0; i + 1 < n; ++i) mid[i] = 0.5 * (x[i] + x[i + 1]);
  for (size_t i = 0; i + 1 < n; ++i) {
    double gap = x[i + 1] - x[i];
    double room = delta - 0.5 * gap;  // > 0 by density
    double cell_l = (i == 0) ? (mid[i] - x[0] + delta) : (mid[i] - mid[i - 1]);
    double cell_r = (i + 2 == n) ? (x[n - 1] + delta - mid[i]) : (mid[i + 1] - mid[i]);
    w[i] = 0.49 * std::min({room, cell_l, cell_r});
  }

  for (size_t k = 0; k < n; ++k) {
    Bump b;
    if (k == 0) {
      // start strictly left of the window edge but inside (x_0 - delta, .)
      double start = 0.5 * (x[0] - delta + std::min(set.window.lo, x[0]));
      b.q0 = 0.5 * (x[0] - delta + start);
      b.q1 = start;
    } else {
      b.q0 = mid[k - 1] - w[k - 1];
      b.q1 = mid[k - 1] + w[k - 1];
    }
    if (k + 1 == n) {
      double end = 0.5 * (x[n - 1] + delta + std::max(set.window.hi, x[n - 1]));
      b.q2 = end;
      b.q3 = 0.5 * (end + x[n - 1] + delta);
    } else {
      b.q2 = mid[k] - w[k];
      b.q3 = mid[k] + w[k];
    }
    bumps_[k] = b;
  }
}

double PartitionOfUnity::sum_at(double x) const {
  // bumps are sorted; at most a handful overlap any point
  double acc = 0.0;
  for (const Bump& b : bumps_) {
    if (b.q3 <= x) continue;
    if (b.q0 >= x) break;
    acc += b.eval(x);
  }
  return acc;
}

}  // namespace decon
