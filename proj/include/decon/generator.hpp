#pragma once

#include <memory>
#include <vector>

#include "decon/bounds.hpp"
#include "decon/piecewise_poly.hpp"

namespace decon {

enum class GeneratorKind { bspline, two_sided_exponential, user_sampled };

const char* generator_kind_name(GeneratorKind k);

/// A concrete generator function phi: R -> R with a decay certificate
/// (C, alpha) fitted at construction. B-splines evaluate exactly through
/// their piecewise-polynomial form; the exponential kind is closed-form;
/// sampled generators interpolate linearly on their grid.
class Generator {
 public:
  static Generator bspline(int order, double alpha = 2.0);
  static Generator two_sided_exponential(double rate, double alpha = 2.0);
  static Generator user_sampled(double x0, double dx, std::vector<double> values,
                                double alpha = 2.0);

  GeneratorKind kind() const { return kind_; }
  int order() const { return order_; }
  double rate() const { return rate_; }
  const DecayCertificate& certificate() const { return cert_; }

  double eval(double x) const;
  bool has_derivative() const;
  double derivative(double x) const;

  bool compact_support() const;
  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }
  // Radius beyond which |phi| provably stays below tol.
  double effective_radius(double tol) const;
  // Certified upper bound on the autocorrelation tail |<phi, phi(.+k)>|,
  // sharper than the generic certificate bound where the kind allows it.
  double autocorr_tail_bound(double k) const;

  bool has_fourier() const;
  double fourier(double w) const;  // real-valued for the built-in kinds

  const PiecewisePoly* piecewise() const { return piece_ ? piece_.get() : nullptr; }

 private:
  Generator() = default;
  void fit_certificate(double alpha);

  GeneratorKind kind_ = GeneratorKind::bspline;
  int order_ = 0;
  double rate_ = 0.0;
  double support_lo_ = 0.0, support_hi_ = 0.0;
  DecayCertificate cert_;
  std::shared_ptr<const PiecewisePoly> piece_;       // bspline
  std::shared_ptr<const PiecewisePoly> piece_deriv_;
  // sampled kind
  double grid_x0_ = 0.0, grid_dx_ = 0.0;
  std::vector<double> grid_values_;
};

}  // namespace decon
