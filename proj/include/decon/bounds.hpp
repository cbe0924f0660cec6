#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "decon/constants.hpp"
#include "decon/multi_index.hpp"

namespace decon {

/// Pointwise decay certificate |phi(x)| <= C (1+|x|)^-alpha. The constants
/// derived from it are finite only for alpha > 3/2.
struct DecayCertificate {
  double C = 0.0;
  double alpha = 0.0;

  void validate() const;
};

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  bool valid = false;
};

// Upper bounds m_b[gamma] on M^gamma_op(b) for every gamma <= alpha, from
// upper bounds momenta_a[beta] on M^beta_op(a) (needed for 0 < beta <= alpha)
// and a positive lower symbol bound A:
//   m_b[0]     = 1/A
//   m_b[gamma] = 1/A * sum_{beta < gamma} binom(gamma, beta) m_b[beta]
//                                         momenta_a[gamma - beta].
std::map<MultiIndex, double> recursive_op_bounds(
    const std::map<MultiIndex, double>& momenta_a, double A,
    const MultiIndex& alpha);

struct OneDimInverseBounds {
  double m12_b;  // M^1_2(a) / A^2
  double l1_b;   // 1/A + pi M^1_2(a) / (A^2 sqrt(3))
};
OneDimInverseBounds one_dim_inverse_bounds(double m12_a, double A);

struct DualWindowBounds {
  double phi_w;  // C W_alpha
  double psi_w;  // (1/A + pi C^2 K_a S_a / (A^2 sqrt 3)) C W_alpha
};
DualWindowBounds dual_window_bounds(const DecayCertificate& cert, double A);

struct RieszBounds {
  double r;  // lower p-Riesz constant, valid for every p in [1, inf]
  double R;  // upper p-Riesz constant
};
RieszBounds riesz_bounds(const DecayCertificate& cert, double A);

// Contraction number of the sampling iteration at density radius delta:
//   rho = C^3 W^3 (1/A + pi C^2 K S/(A^2 sqrt 3))^2 (2 ceil(delta)+1)
//         ||phi'||_{W(L^q, l^1)} delta^{1-1/q},
// with 1/q = 0 at q = inf. Reconstruction is certified when rho < 1.
double sampling_rho(const DecayCertificate& cert, double A, double deriv_norm,
                    double q, double delta);

// Largest delta (up to relative precision 1e-6, capped at 1e6) with
// sampling_rho(delta) <= rho_target. rho is nondecreasing in delta and jumps
// at integer breakpoints, which are scanned separately.
double solve_max_delta(const DecayCertificate& cert, double A, double deriv_norm,
                       double q, double rho_target);

struct SamplingFrameBounds {
  double c_p;
  double C_p;
};
// Explicit sampling inequality constants for a relatively separated,
// delta-dense set with relative separation N_X; requires rho < 1.
SamplingFrameBounds sampling_frame_bounds(const DecayCertificate& cert, double A,
                                          long N_X, double delta, double rho,
                                          double p);

BoundReport make_report(std::string name,
                        std::vector<std::pair<std::string, double>> inputs,
                        double value, bool valid);

}  // namespace decon
