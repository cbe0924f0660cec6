#include "decon/piecewise_poly.hpp"

#include <algorithm>
#include <cmath>

#include "decon/errors.hpp"

namespace decon {

namespace {

constexpr double kBreakEps = 1e-12;

double poly_eval(const std::vector<double>& c, double t) {
  double r = 0.0;
  for (size_t i = c.size(); i-- > 0;) r = r * t + c[i];
  return r;
}

// Re-express a polynomial in (x - tau) as one in (x - c): substitute
// (x - tau) = (x - c) + (c - tau) and expand.
std::vector<double> poly_recenter(const std::vector<double>& coeffs, double h) {
  std::vector<double> out(coeffs.size(), 0.0);
  for (size_t n = coeffs.size(); n-- > 0;) {
    // out <- out * (y + h) + coeffs[n], operating on polynomials in y
    for (size_t i = out.size(); i-- > 1;) out[i] = out[i - 1] + out[i] * h;
    out[0] = out[0] * h + coeffs[n];
  }
  return out;
}

std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

double poly_integral_0_to(const std::vector<double>& c, double t) {
  double r = 0.0;
  for (size_t i = c.size(); i-- > 0;)
    r = r * t + c[i] / static_cast<double>(i + 1);
  return r * t;
}

}  // namespace

PiecewisePoly::PiecewisePoly(std::vector<double> breaks,
                             std::vector<std::vector<double>> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  require(breaks_.size() == pieces_.size() + 1 && !pieces_.empty(),
          ErrorCode::validation, "piecewise poly needs M+1 breaks for M pieces");
  for (size_t i = 0; i + 1 < breaks_.size(); ++i)
    require(breaks_[i] < breaks_[i + 1], ErrorCode::validation,
            "piecewise poly breaks must increase");
}

PiecewisePoly PiecewisePoly::unit_box() {
  return PiecewisePoly({-0.5, 0.5}, {{1.0}});
}

double PiecewisePoly::eval(double x) const {
  if (empty() || x < breaks_.front() || x >= breaks_.back()) return 0.0;
  size_t i = static_cast<size_t>(
      std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
  i = (i == 0) ? 0 : i - 1;
  if (i >= pieces_.size()) i = pieces_.size() - 1;
  return poly_eval(pieces_[i], x - breaks_[i]);
}

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<std::vector<double>> dp;
  dp.reserve(pieces_.size());
  for (const auto& c : pieces_) {
    std::vector<double> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    if (d.empty()) d.push_back(0.0);
    dp.push_back(std::move(d));
  }
  return PiecewisePoly(breaks_, std::move(dp));
}

PiecewisePoly PiecewisePoly::convolve_unit_box() const {
  // (p * box)(x) = F(x + 1/2) - F(x - 1/2) with F the antiderivative of p.
  // F's pieces keep their local coordinates when the breaks are shifted, so
  // both terms are the same piece list over shifted breaks.
  std::vector<std::vector<double>> F;
  F.reserve(pieces_.size());
  double acc = 0.0;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    std::vector<double> c(pieces_[i].size() + 1, 0.0);
    c[0] = acc;
    for (size_t j = 0; j < pieces_[i].size(); ++j)
      c[j + 1] = pieces_[i][j] / static_cast<double>(j + 1);
    acc = poly_eval(c, breaks_[i + 1] - breaks_[i]);
    F.push_back(std::move(c));
  }
  double total = acc;

  std::vector<double> merged;
  for (double t : breaks_) {
    merged.push_back(t - 0.5);
    merged.push_back(t + 0.5);
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [](double a, double b) {
                             return std::abs(a - b) < kBreakEps;
                           }),
               merged.end());

  // value of F at x+s expressed as a polynomial in (x - left)
  auto F_shifted_on = [&](double s, double left, double right) {
    double mid = 0.5 * (left + right) + s;
    std::vector<double> c;
    if (mid < breaks_.front())
      c = {0.0};
    else if (mid >= breaks_.back())
      c = {total};
    else {
      size_t i = static_cast<size_t>(
          std::upper_bound(breaks_.begin(), breaks_.end(), mid) -
          breaks_.begin()) - 1;
      // local var of F piece: (x + s - breaks_[i]) = (x - left) + (left + s - breaks_[i])
      c = poly_recenter(F[i], left + s - breaks_[i]);
    }
    return c;
  };

  std::vector<std::vector<double>> pieces;
  std::vector<double> breaks;
  for (size_t i = 0; i + 1 < merged.size(); ++i) {
    double l = merged[i], r = merged[i + 1];
    std::vector<double> hi = F_shifted_on(+0.5, l, r);
    std::vector<double> lo = F_shifted_on(-0.5, l, r);
    std::vector<double> c(std::max(hi.size(), lo.size()), 0.0);
    for (size_t j = 0; j < hi.size(); ++j) c[j] += hi[j];
    for (size_t j = 0; j < lo.size(); ++j) c[j] -= lo[j];
    breaks.push_back(l);
    pieces.push_back(std::move(c));
  }
  breaks.push_back(merged.back());
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

double PiecewisePoly::integral() const {
  double acc = 0.0;
  for (size_t i = 0; i < pieces_.size(); ++i)
    acc += poly_integral_0_to(pieces_[i], breaks_[i + 1] - breaks_[i]);
  return acc;
}

double PiecewisePoly::integrate_product(const PiecewisePoly& q, double shift) const {
  // q(x + shift) lives on breaks tau_j - shift with unchanged local coords.
  double lo = std::max(support_lo(), q.support_lo() - shift);
  double hi = std::min(support_hi(), q.support_hi() - shift);
  if (lo >= hi) return 0.0;

  std::vector<double> merged{lo, hi};
  for (double t : breaks_)
    if (t > lo && t < hi) merged.push_back(t);
  for (double t : q.breaks_) {
    double s = t - shift;
    if (s > lo && s < hi) merged.push_back(s);
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [](double a, double b) {
                             return std::abs(a - b) < kBreakEps;
                           }),
               merged.end());

  double acc = 0.0;
  for (size_t i = 0; i + 1 < merged.size(); ++i) {
    double l = merged[i], r = merged[i + 1];
    double mid = 0.5 * (l + r);
    size_t ip = static_cast<size_t>(
        std::upper_bound(breaks_.begin(), breaks_.end(), mid) - breaks_.begin()) - 1;
    size_t iq = static_cast<size_t>(
        std::upper_bound(q.breaks_.begin(), q.breaks_.end(), mid + shift) -
        q.breaks_.begin()) - 1;
    std::vector<double> cp = poly_recenter(pieces_[ip], l - breaks_[ip]);
    std::vector<double> cq = poly_recenter(q.pieces_[iq], l + shift - q.breaks_[iq]);
    acc += poly_integral_0_to(poly_mul(cp, cq), r - l);
  }
  return acc;
}

PiecewisePoly bspline_centered(int order) {
  require(order >= 1 && order <= 12, ErrorCode::validation,
          "B-spline order must lie in [1, 12]");
  PiecewisePoly b = PiecewisePoly::unit_box();
  for (int m = 2; m <= order; ++m) b = b.convolve_unit_box();
  return b;
}

}  // namespace decon
