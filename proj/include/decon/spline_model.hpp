#pragma once

#include <cstdint>

#include "decon/generator.hpp"
#include "decon/sampled_function.hpp"
#include "decon/sequence.hpp"
#include "decon/symbol.hpp"

namespace decon {

struct SplineModelOptions {
  long k_max = -1;            // autocorrelation radius; -1 = derive from decay
  double quad_step = 1.0 / 64;
  int grid_size = 1024;
  double trunc_tol = 1e-10;
  double autocorr_tail_tol = 1e-10;
  long defect_k_max = 20;
};

/// A generator together with its autocorrelation, certified gramian range,
/// convolutive inverse b and the dual window psi = sum_k b_k phi(. + k)
/// represented by the coefficient sequence b. Immutable after construction.
struct SplineModel {
  Generator gen;
  SplineModelOptions opts;
  WeightedSequence a;  // a_k = <phi, phi(. + k)>
  double A_gram = 0.0, B_gram = 0.0;
  WeightedSequence b;  // truncated convolutive inverse of a
  double residual_l2 = 0.0;
  double biorth_defect = 0.0;

  SplineModel(Generator g, SplineModelOptions o)
      : gen(std::move(g)),
        opts(o),
        a(WeightedSequence::zero(1)),
        b(WeightedSequence::zero(1)) {}

  cplx psi_eval(double x) const;
  double psi_support_radius() const;
};

// a_k = <phi, phi(. + k)> for |k| <= k_max: exact piecewise-polynomial
// integration for B-splines, adaptive Gauss-Legendre otherwise. Hermitian
// symmetry is enforced by averaging. The radius must make the certified
// tail bound on |a_k| fall below tail_tol.
WeightedSequence autocorrelation(const Generator& gen, long k_max,
                                 double quad_step, double tail_tol);

struct GramianRange {
  double A_gram = 0.0;
  double B_gram = 0.0;
  double max_imag = 0.0;
};

// Certified range of the gramian symbol a^; errors with NotRieszBasis when
// the certified lower bound vanishes.
GramianRange gramian_check(const WeightedSequence& a, int grid_size);

SplineModel build_spline_model(const Generator& gen,
                               const SplineModelOptions& opts = {});

// max_{|k| <= k_max} |<phi, psi(. - k)> - delta_{0k}| by direct quadrature
// of the constructed pair.
double biorthogonality_defect(const SplineModel& model, long k_max);

// f(x) = sum_k c_k phi(x - k) sampled on [x_lo, x_hi] with step dx.
SampledFunction synthesize(const SplineModel& model, const WeightedSequence& c,
                           double x_lo, double x_hi, double dx);

// d_m = <f, phi(. - m)> for m in [k_lo, k_hi] by quadrature on f's grid.
WeightedSequence translate_inner_products(const Generator& gen,
                                          const SampledFunction& f, long k_lo,
                                          long k_hi);

// c_k = <f, psi(. - k)> for k in [k_lo, k_hi], via quadrature against the
// generator and exact recombination with b.
WeightedSequence analyze(const SplineModel& model, const SampledFunction& f,
                         long k_lo, long k_hi);

struct RatioRange {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

// Extreme observed ||sum c_k phi(.-k)||_p / ||c||_p over random complex
// Gaussian coefficient vectors of support width 64.
RatioRange riesz_ratio_empirical(const SplineModel& model, double p, int trials,
                                 uint64_t seed);

}  // namespace decon
