#pragma once

#include <vector>

#include "decon/sequence.hpp"

namespace decon {

/// Uniform samples of the symbol a^(w) = sum_k a_k e^{2 pi i k.w} on the grid
/// {j/N : j in {0..N-1}^d}. lipschitz_margin bounds how much |a^| can move
/// between a torus point and its nearest node: (pi sqrt(d)/N) sum_j M^{e_j}_1(a),
/// from the derivative bound ||d_j a^||_inf <= 2 pi M^{e_j}_1(a).
struct SymbolGrid {
  int dim = 1;
  int grid_size = 0;
  std::vector<cplx> values;  // row-major, N^d entries
  double lipschitz_margin = 0.0;

  size_t size() const { return values.size(); }
};

struct CertifiedRange {
  double A_certified = 0.0;  // valid lower bound for min |a^| on the torus
  double B_certified = 0.0;  // valid upper bound for max |a^|
  double grid_min = 0.0;
  double grid_max = 0.0;
};

struct DeconvResult {
  WeightedSequence b;
  double A_certified = 0.0;
  double B_certified = 0.0;
  double residual_l2 = 0.0;  // ||a * b - delta||_2, recomputed exactly
  std::vector<long> truncation_radius;
  double grid_l2 = 0.0;  // l2 mass of the untruncated grid inverse
  int grid_size = 0;     // 0 marks the closed-form single-point path
};

struct OpMomentumEstimate {
  MultiIndex index;
  double lower = 0.0;  // max over grid of |F(X^alpha a)|
  double upper = 0.0;  // lower + lipschitz margin of the weighted sequence

  Momentum as_momentum() const { return Momentum{index, NormTag::op, upper}; }
};

// Smallest admissible grid size for a: power of two, >= 64, and at least
// twice the support width on every axis.
int min_grid_size(const WeightedSequence& a);

SymbolGrid build_symbol(const WeightedSequence& a, int grid_size);

CertifiedRange certify_range(const SymbolGrid& grid);

// Inverts the symbol on the grid, truncates the inverse sequence to the
// smallest centered cube keeping all but trunc_tol of the l2 mass, and
// recomputes the residual by exact convolution. Errors: NotInvertible when
// the certified lower bound is 0; GridTooSmall when doubling the grid still
// moves ||b||_2 by more than trunc_tol (relative).
DeconvResult deconvolve(const WeightedSequence& a, int grid_size, double trunc_tol);

// Two-sided estimate of M^alpha_op(a) from the weighted symbol grid.
OpMomentumEstimate momentum_op(const WeightedSequence& a, const MultiIndex& alpha,
                               int grid_size);

// Max defect of the identity (1/f)' = -f'/f^2 under central finite
// differences on the grid; second order in the grid spacing.
double check_derivative_identity(const SymbolGrid& grid);

}  // namespace decon
