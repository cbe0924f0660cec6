#include "decon/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "decon/errors.hpp"

namespace decon {

namespace {

constexpr double kDeltaCap = 1e6;

double inv_or_zero(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

// 1/A + pi C^2 K S / (A^2 sqrt 3): the certified ||b||_1 factor that also
// bounds ||psi||_W / ||phi||_W.
double psi_factor(const DecayCertificate& cert, const ConstantSet& cs, double A) {
  return 1.0 / A + std::numbers::pi * cert.C * cert.C * cs.K * cs.S /
                       (A * A * std::sqrt(3.0));
}

}  // namespace

void DecayCertificate::validate() const {
  require(std::isfinite(C) && C > 0.0, ErrorCode::hypothesis_failed,
          "decay certificate needs C > 0");
  require(std::isfinite(alpha) && alpha > 1.5, ErrorCode::hypothesis_failed,
          "decay certificate needs alpha > 3/2");
}

std::map<MultiIndex, double> recursive_op_bounds(
    const std::map<MultiIndex, double>& momenta_a, double A,
    const MultiIndex& alpha) {
  require(A > 0.0, ErrorCode::hypothesis_failed,
          "recursive bounds need a positive lower symbol bound A");
  std::map<MultiIndex, double> out;
  for (const MultiIndex& gamma : MultiIndex::lower_set(alpha)) {
    if (gamma.is_zero()) {
      out[gamma] = 1.0 / A;
      continue;
    }
    double sum = 0.0;
    for (const MultiIndex& beta : MultiIndex::lower_set(gamma)) {
      if (beta == gamma) continue;
      MultiIndex rest = gamma.minus(beta);
      auto it = momenta_a.find(rest);
      require(it != momenta_a.end(), ErrorCode::validation,
              "missing momentum bound for index " + rest.to_string());
      sum += binomial(gamma, beta) * out.at(beta) * it->second;
    }
    out[gamma] = sum / A;
  }
  return out;
}

OneDimInverseBounds one_dim_inverse_bounds(double m12_a, double A) {
  require(A > 0.0, ErrorCode::hypothesis_failed,
          "one-dimensional inverse bounds need A > 0");
  require(m12_a >= 0.0, ErrorCode::validation, "momentum must be >= 0");
  return OneDimInverseBounds{
      m12_a / (A * A),
      1.0 / A + std::numbers::pi * m12_a / (A * A * std::sqrt(3.0))};
}

DualWindowBounds dual_window_bounds(const DecayCertificate& cert, double A) {
  cert.validate();
  require(A > 0.0, ErrorCode::hypothesis_failed, "dual-window bound needs A > 0");
  ConstantSet cs = ConstantSet::for_alpha(cert.alpha);
  double phi_w = cert.C * cs.W;
  return DualWindowBounds{phi_w, psi_factor(cert, cs, A) * phi_w};
}

RieszBounds riesz_bounds(const DecayCertificate& cert, double A) {
  cert.validate();
  require(A > 0.0, ErrorCode::hypothesis_failed, "Riesz bounds need A > 0");
  ConstantSet cs = ConstantSet::for_alpha(cert.alpha);
  double kappa =
      std::numbers::pi / std::sqrt(3.0) * cert.C * cert.C * cs.K * cs.S;
  double R = cert.C * cs.W;
  double r = (A * A / (A + kappa)) / R;
  return RieszBounds{r, R};
}

double sampling_rho(const DecayCertificate& cert, double A, double deriv_norm,
                    double q, double delta) {
  cert.validate();
  require(A > 0.0, ErrorCode::hypothesis_failed, "sampling rho needs A > 0");
  require(q > 1.0, ErrorCode::hypothesis_failed, "sampling rho needs q > 1");
  require(delta > 0.0, ErrorCode::hypothesis_failed, "sampling rho needs delta > 0");
  require(deriv_norm >= 0.0, ErrorCode::validation, "derivative norm must be >= 0");
  ConstantSet cs = ConstantSet::for_alpha(cert.alpha);
  double pf = psi_factor(cert, cs, A);
  double cw = cert.C * cs.W;
  return cw * cw * cw * pf * pf * (2.0 * std::ceil(delta) + 1.0) * deriv_norm *
         std::pow(delta, 1.0 - inv_or_zero(q));
}

double solve_max_delta(const DecayCertificate& cert, double A, double deriv_norm,
                       double q, double rho_target) {
  require(rho_target > 0.0 && rho_target < 1.0, ErrorCode::hypothesis_failed,
          "rho target must lie in (0, 1)");
  auto rho = [&](double delta) {
    return sampling_rho(cert, A, deriv_norm, q, delta);
  };
  if (rho(1.0) == 0.0) return kDeltaCap;  // constant generator direction
  if (rho(kDeltaCap) <= rho_target) return kDeltaCap;

  double e = 1.0 - inv_or_zero(q);
  auto rho_with_ceil = [&](double delta, double ceil_val) {
    return rho(1.0) / 3.0 * (2.0 * ceil_val + 1.0) * std::pow(delta, e);
  };

  auto bisect = [&](double lo, double hi, double ceil_val) {
    // invariant: rho(lo) <= target < rho(hi) on a continuous piece
    while (hi - lo > 1e-6 * lo) {
      double mid = 0.5 * (lo + hi);
      if (rho_with_ceil(mid, ceil_val) <= rho_target)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };

  if (rho(1.0) > rho_target) {
    // crossing inside (0, 1]: ceil(delta) = 1 throughout
    double lo = 1.0;
    for (int i = 0; i < 4000 && rho_with_ceil(lo, 1.0) > rho_target; ++i) lo /= 2;
    require(rho_with_ceil(lo, 1.0) <= rho_target, ErrorCode::numeric,
            "no representable delta reaches the rho target");
    return bisect(lo, 1.0, 1.0);
  }

  // Largest integer with rho(n) <= target, then resolve the open interval
  // (n, n+1] where the ceiling has already jumped.
  long lo_n = 1, hi_n = static_cast<long>(kDeltaCap);
  while (lo_n < hi_n) {  // rho at integers is increasing
    long mid = (lo_n + hi_n + 1) / 2;
    if (rho(static_cast<double>(mid)) <= rho_target)
      lo_n = mid;
    else
      hi_n = mid - 1;
  }
  double n = static_cast<double>(lo_n);
  double just_right = rho_with_ceil(n, n + 1.0);  // limit from the right
  if (just_right > rho_target) return n;          // breakpoint solution
  return bisect(n, n + 1.0, n + 1.0);
}

SamplingFrameBounds sampling_frame_bounds(const DecayCertificate& cert, double A,
                                          long N_X, double delta, double rho,
                                          double p) {
  cert.validate();
  require(A > 0.0, ErrorCode::hypothesis_failed, "frame bounds need A > 0");
  require(rho >= 0.0 && rho < 1.0, ErrorCode::hypothesis_failed,
          "frame bounds need rho < 1");
  require(N_X >= 1, ErrorCode::validation, "relative separation must be >= 1");
  require(delta > 0.0, ErrorCode::validation, "delta must be > 0");
  require(p >= 1.0, ErrorCode::validation, "p must lie in [1, inf]");
  ConstantSet cs = ConstantSet::for_alpha(cert.alpha);
  double pf = psi_factor(cert, cs, A);
  double cw2 = cert.C * cs.W * cert.C * cs.W;
  double invp = inv_or_zero(p);
  double kappa =
      std::numbers::pi / std::sqrt(3.0) * cert.C * cert.C * cs.K * cs.S;
  double C_p = std::pow(static_cast<double>(N_X), invp) * cw2 * pf;
  double c_p =
      (1.0 - rho) * std::pow(2.0 * delta, -invp) * (A * A / (A + kappa)) / cw2;
  return SamplingFrameBounds{c_p, C_p};
}

BoundReport make_report(std::string name,
                        std::vector<std::pair<std::string, double>> inputs,
                        double value, bool valid) {
  return BoundReport{std::move(name), std::move(inputs), value, valid};
}

}  // namespace decon
