#pragma once

namespace decon {

// Certified upper evaluations of the lattice constants appearing in the
// bound formulas. Each value is a partial sum plus a midpoint-rule integral
// tail, so it sits on or above the true constant; recomputing with more
// terms can only tighten it downward.

// W_alpha = 2 sum_{j>=1} j^-alpha, for alpha > 1.
double constant_W(double alpha);

// S_alpha = (sum_{k in Z} k^2 (1+|k|)^{-2 alpha})^{1/2}, for alpha > 3/2.
double constant_S(double alpha);

struct KConstant {
  double closed_bound;  // (1 + 2^alpha) * 2/(alpha - 1); the certified value
  double sharpened;     // numeric sup estimate, informational only
};

// K_alpha = sup_x (1+|x|)^alpha int (1+|s|)^-alpha (1+|x-s|)^-alpha ds,
// for alpha > 1. The closed bound is certified; the sharpened value comes
// from quadrature over a finite x-grid and never exceeds the closed bound.
KConstant constant_K(double alpha, bool with_sharpening = false);

struct ConstantSet {
  double alpha = 0.0;
  double W = 0.0;
  double S = 0.0;
  double K = 0.0;  // closed bound

  static ConstantSet for_alpha(double alpha);  // requires alpha > 3/2
};

}  // namespace decon
