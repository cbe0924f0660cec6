#include "decon/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "decon/errors.hpp"

namespace decon {

const char* generator_kind_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::bspline: return "bspline";
    case GeneratorKind::two_sided_exponential: return "exp";
    case GeneratorKind::user_sampled: return "sampled";
  }
  return "unknown";
}

Generator Generator::bspline(int order, double alpha) {
  Generator g;
  g.kind_ = GeneratorKind::bspline;
  g.order_ = order;
  auto p = std::make_shared<PiecewisePoly>(bspline_centered(order));
  g.piece_deriv_ = std::make_shared<PiecewisePoly>(p->derivative());
  g.piece_ = std::move(p);
  g.support_lo_ = g.piece_->support_lo();
  g.support_hi_ = g.piece_->support_hi();
  g.fit_certificate(alpha);
  return g;
}

Generator Generator::two_sided_exponential(double rate, double alpha) {
  require(rate > 0.0, ErrorCode::validation, "exponential rate must be > 0");
  Generator g;
  g.kind_ = GeneratorKind::two_sided_exponential;
  g.rate_ = rate;
  g.support_lo_ = -std::numeric_limits<double>::infinity();
  g.support_hi_ = std::numeric_limits<double>::infinity();
  g.fit_certificate(alpha);
  return g;
}

Generator Generator::user_sampled(double x0, double dx, std::vector<double> values,
                                  double alpha) {
  require(dx > 0.0 && values.size() >= 2, ErrorCode::validation,
          "sampled generator needs dx > 0 and at least two samples");
  for (double v : values)
    require(std::isfinite(v), ErrorCode::validation,
            "sampled generator values must be finite");
  Generator g;
  g.kind_ = GeneratorKind::user_sampled;
  g.grid_x0_ = x0;
  g.grid_dx_ = dx;
  g.grid_values_ = std::move(values);
  g.support_lo_ = x0;
  g.support_hi_ = x0 + dx * static_cast<double>(g.grid_values_.size() - 1);
  g.fit_certificate(alpha);
  return g;
}

double Generator::eval(double x) const {
  switch (kind_) {
    case GeneratorKind::bspline:
      return piece_->eval(x);
    case GeneratorKind::two_sided_exponential:
      return std::exp(-rate_ * std::abs(x));
    case GeneratorKind::user_sampled: {
      double t = (x - grid_x0_) / grid_dx_;
      if (t < 0.0 || t > static_cast<double>(grid_values_.size() - 1)) return 0.0;
      size_t i = std::min(static_cast<size_t>(t), grid_values_.size() - 2);
      double frac = t - static_cast<double>(i);
      return grid_values_[i] * (1.0 - frac) + grid_values_[i + 1] * frac;
    }
  }
  return 0.0;
}

bool Generator::has_derivative() const {
  return kind_ != GeneratorKind::user_sampled;
}

double Generator::derivative(double x) const {
  require(has_derivative(), ErrorCode::validation,
          "generator has no derivative access");
  switch (kind_) {
    case GeneratorKind::bspline:
      return piece_deriv_->eval(x);
    case GeneratorKind::two_sided_exponential:
      if (x == 0.0) return 0.0;  // a.e. derivative; the kink gets the average
      return -rate_ * (x > 0.0 ? 1.0 : -1.0) * std::exp(-rate_ * std::abs(x));
    default:
      return 0.0;
  }
}

bool Generator::compact_support() const {
  return kind_ != GeneratorKind::two_sided_exponential;
}

double Generator::effective_radius(double tol) const {
  if (compact_support())
    return std::max(std::abs(support_lo_), std::abs(support_hi_));
  // e^{-rate |x|} <= tol
  return std::max(1.0, -std::log(std::max(tol, 1e-300)) / rate_);
}

double Generator::autocorr_tail_bound(double k) const {
  double ak = std::abs(k);
  if (compact_support()) {
    double diam = support_hi_ - support_lo_;
    return ak >= diam ? 0.0 : std::numeric_limits<double>::infinity();
  }
  // exact closed form of the overlap integral for the exponential kind
  return std::exp(-rate_ * ak) * (1.0 / rate_ + ak);
}

bool Generator::has_fourier() const {
  return kind_ != GeneratorKind::user_sampled;
}

double Generator::fourier(double w) const {
  require(has_fourier(), ErrorCode::validation,
          "generator has no Fourier transform access");
  switch (kind_) {
    case GeneratorKind::bspline: {
      double s = (w == 0.0) ? 1.0
                            : std::sin(std::numbers::pi * w) /
                                  (std::numbers::pi * w);
      return std::pow(s, order_);
    }
    case GeneratorKind::two_sided_exponential: {
      double t = 2.0 * std::numbers::pi * w;
      return 2.0 * rate_ / (rate_ * rate_ + t * t);
    }
    default:
      return 0.0;
  }
}

void Generator::fit_certificate(double alpha) {
  require(alpha > 1.5, ErrorCode::hypothesis_failed,
          "certificate exponent must exceed 3/2");
  double C = 0.0;
  if (kind_ == GeneratorKind::two_sided_exponential) {
    // maximize e^{-rate x}(1+x)^alpha analytically: critical at alpha/rate - 1
    double xc = std::max(0.0, alpha / rate_ - 1.0);
    C = std::max(1.0, std::exp(-rate_ * xc) * std::pow(1.0 + xc, alpha));
  } else {
    // dense scan with a slope pad so the fitted C is a true pointwise bound
    double lo = support_lo_, hi = support_hi_;
    double step = (hi - lo) / 20000.0;
    double vmax = 0.0, slope = 0.0;
    for (double x = lo; x <= hi; x += step) {
      double v = std::abs(eval(x)) * std::pow(1.0 + std::abs(x), alpha);
      vmax = std::max(vmax, v);
      double v2 = std::abs(eval(std::min(x + step, hi))) *
                  std::pow(1.0 + std::abs(std::min(x + step, hi)), alpha);
      slope = std::max(slope, std::abs(v2 - v) / step);
    }
    C = vmax + slope * step;
  }
  cert_ = DecayCertificate{C, alpha};
  cert_.validate();

  // construction-time check of the pointwise decay bound
  double R = effective_radius(1e-14);
  for (int i = 0; i <= 4000; ++i) {
    double x = -R + 2.0 * R * static_cast<double>(i) / 4000.0;
    require(std::abs(eval(x)) <=
                cert_.C * std::pow(1.0 + std::abs(x), -cert_.alpha) * (1.0 + 1e-9),
            ErrorCode::validation, "decay certificate fit failed");
  }
}

}  // namespace decon
