#pragma once

#include <vector>

namespace decon {

/// Piecewise polynomial on consecutive intervals [t_i, t_{i+1}), with
/// coefficients in the local variable (x - t_i). Zero outside [t_0, t_M).
/// Supports the exact constructions needed for B-splines: convolution with
/// the unit box, derivatives, and exact product integrals.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<double> breaks,
                std::vector<std::vector<double>> pieces);

  static PiecewisePoly unit_box();  // indicator of [-1/2, 1/2)

  bool empty() const { return pieces_.empty(); }
  double support_lo() const { return breaks_.front(); }
  double support_hi() const { return breaks_.back(); }
  const std::vector<double>& breaks() const { return breaks_; }

  double eval(double x) const;
  PiecewisePoly derivative() const;
  PiecewisePoly convolve_unit_box() const;  // p * box

  double integral() const;
  // Exact integral of p(x) * q(x + shift) over the real line.
  double integrate_product(const PiecewisePoly& q, double shift) const;

 private:
  std::vector<double> breaks_;               // size M+1
  std::vector<std::vector<double>> pieces_;  // size M, ascending degree
};

// Centered cardinal B-spline of the given order (order 1 = box, 2 = hat, ...),
// supported on [-order/2, order/2].
PiecewisePoly bspline_centered(int order);

}  // namespace decon
