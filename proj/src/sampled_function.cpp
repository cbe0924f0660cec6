#include "decon/sampled_function.hpp"

#include <algorithm>
#include <cmath>

#include "decon/errors.hpp"

namespace decon {

namespace {

// Composite Simpson over samples [i0, i1] (falls back to trapezoid on a
// leftover interval when the count is even).
double simpson_abs_pow(const SampledFunction& f, size_t i0, size_t i1, double p) {
  if (i1 <= i0) return 0.0;
  auto g = [&](size_t i) { return std::pow(std::abs(f.v[i]), p); };
  double acc = 0.0;
  size_t i = i0;
  while (i + 2 <= i1) {
    acc += (g(i) + 4.0 * g(i + 1) + g(i + 2)) * f.dx / 3.0;
    i += 2;
  }
  if (i + 1 <= i1) acc += 0.5 * (g(i) + g(i + 1)) * f.dx;
  return acc;
}

}  // namespace

double lp_norm(const SampledFunction& f, double p) {
  require(p >= 1.0, ErrorCode::validation, "p must lie in [1, inf]");
  if (f.v.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& z : f.v) m = std::max(m, std::abs(z));
    return m;
  }
  return std::pow(simpson_abs_pow(f, 0, f.v.size() - 1, p), 1.0 / p);
}

double amalgam_norm(const SampledFunction& f, double p, double q) {
  require(p >= 1.0 && q >= 1.0, ErrorCode::validation,
          "amalgam exponents must lie in [1, inf]");
  if (f.v.empty()) return 0.0;
  long j_lo = static_cast<long>(std::floor(f.x0));
  long j_hi = static_cast<long>(std::ceil(f.x_end()));
  double acc = 0.0, qmax = 0.0;
  for (long j = j_lo; j < j_hi; ++j) {
    // samples in [j, j+1]
    double lo = std::max(static_cast<double>(j), f.x0);
    double hi = std::min(static_cast<double>(j + 1), f.x_end());
    if (hi <= lo) continue;
    size_t i0 = static_cast<size_t>(std::ceil((lo - f.x0) / f.dx - 1e-9));
    size_t i1 = static_cast<size_t>(std::floor((hi - f.x0) / f.dx + 1e-9));
    i1 = std::min(i1, f.v.size() - 1);
    double cell;
    if (std::isinf(p)) {
      cell = 0.0;
      for (size_t i = i0; i <= i1; ++i) cell = std::max(cell, std::abs(f.v[i]));
    } else {
      cell = std::pow(simpson_abs_pow(f, i0, i1, p), 1.0 / p);
    }
    if (std::isinf(q))
      qmax = std::max(qmax, cell);
    else
      acc += std::pow(cell, q);
  }
  return std::isinf(q) ? qmax : std::pow(acc, 1.0 / q);
}

double lp_norm(const std::vector<cplx>& c, double p) {
  require(p >= 1.0, ErrorCode::validation, "p must lie in [1, inf]");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& z : c) m = std::max(m, std::abs(z));
    return m;
  }
  double acc = 0.0;
  for (const cplx& z : c) acc += std::pow(std::abs(z), p);
  return std::pow(acc, 1.0 / p);
}

double lp_norm(const WeightedSequence& c, double p) { return lp_norm(c.values(), p); }

}  // namespace decon
