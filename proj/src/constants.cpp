#include "decon/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "decon/errors.hpp"

namespace decon {

namespace {

constexpr long kMaxTerms = 1000000;

struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double constant_W(double alpha) {
  require(alpha > 1.0, ErrorCode::hypothesis_failed,
          "W_alpha diverges for alpha <= 1");
  Kahan acc;
  double tail = 0.0;
  for (long j = 1; j <= kMaxTerms; ++j) {
    acc.add(std::pow(static_cast<double>(j), -alpha));
    // Midpoint-rule tail: sum_{i>j} i^-a <= int_{j+1/2}^inf x^-a dx.
    tail = std::pow(static_cast<double>(j) + 0.5, 1.0 - alpha) / (alpha - 1.0);
    if (tail <= 1e-15 * acc.sum) break;
  }
  return 2.0 * (acc.sum + tail);
}

double constant_S(double alpha) {
  require(alpha > 1.5, ErrorCode::hypothesis_failed,
          "S_alpha diverges for alpha <= 3/2");
  Kahan acc;
  double tail = 0.0;
  for (long k = 1; k <= kMaxTerms; ++k) {
    double kk = static_cast<double>(k);
    acc.add(kk * kk * std::pow(1.0 + kk, -2.0 * alpha));
    // k^2 (1+k)^{-2a} <= (1+k)^{2-2a}, then the midpoint integral bound.
    tail = std::pow(kk + 1.5, 3.0 - 2.0 * alpha) / (2.0 * alpha - 3.0);
    if (tail <= 1e-15 * acc.sum) break;
  }
  return std::sqrt(2.0 * (acc.sum + tail));
}

KConstant constant_K(double alpha, bool with_sharpening) {
  require(alpha > 1.0, ErrorCode::hypothesis_failed,
          "K_alpha diverges for alpha <= 1");
  double closed = (1.0 + std::pow(2.0, alpha)) * 2.0 / (alpha - 1.0);
  KConstant out{closed, closed};
  if (!with_sharpening) return out;

  // sup over a log-spaced x-grid of (1+x)^alpha * int h(s) ds, with the
  // integral mapped through s = tan(u) and integrated by composite Simpson.
  auto integral_at = [alpha](double x) {
    const int n = 20000;  // even
    const double u_lo = -std::numbers::pi / 2 + 1e-7;
    const double u_hi = std::numbers::pi / 2 - 1e-7;
    const double h = (u_hi - u_lo) / n;
    auto f = [alpha, x](double u) {
      double s = std::tan(u);
      double sec2 = 1.0 + s * s;
      return std::pow(1.0 + std::abs(s), -alpha) *
             std::pow(1.0 + std::abs(x - s), -alpha) * sec2;
    };
    double acc = f(u_lo) + f(u_hi);
    for (int i = 1; i < n; ++i) acc += f(u_lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
  };

  double sup = 0.0;
  std::vector<double> xs{0.0};
  for (double x = 1e-2; x <= 1e4; x *= 1.3) xs.push_back(x);
  for (double x : xs)
    sup = std::max(sup, std::pow(1.0 + x, alpha) * integral_at(x));
  out.sharpened = std::min(closed, sup * (1.0 + 1e-3));
  return out;
}

ConstantSet ConstantSet::for_alpha(double alpha) {
  static std::map<double, ConstantSet> cache;
  static std::mutex mutex;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
  }
  ConstantSet cs;
  cs.alpha = alpha;
  cs.W = constant_W(alpha);
  cs.S = constant_S(alpha);
  cs.K = constant_K(alpha).closed_bound;
  {
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(alpha, cs);
  }
  return cs;
}

}  // namespace decon
