#include "decon/recon.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include "decon/errors.hpp"

namespace decon {

OscillationEstimate oscillation_bound(const Generator& gen, double delta, double q,
                                      double grid_dx) {
  require(gen.has_derivative(), ErrorCode::validation,
          "oscillation bound needs derivative access");
  require(delta > 0.0, ErrorCode::validation, "delta must be > 0");
  require(q > 1.0, ErrorCode::hypothesis_failed, "oscillation bound needs q > 1");

  double R = gen.effective_radius(1e-14) + 1.0;
  size_t n = static_cast<size_t>(std::round(2.0 * R / grid_dx)) + 1;

  // phi' may jump at cell boundaries; midpoint samples keep every value
  // attributed to the cell it lives in
  SampledFunction dphi;
  dphi.x0 = -R + 0.5 * grid_dx;
  dphi.dx = grid_dx;
  dphi.v.resize(n);
  for (size_t i = 0; i < n; ++i) dphi.v[i] = gen.derivative(dphi.x_at(i));
  double deriv_norm = amalgam_norm(dphi, q, 1.0);

  double invq = std::isinf(q) ? 0.0 : 1.0 / q;
  double certified = (2.0 * std::ceil(delta) + 1.0) * deriv_norm *
                     std::pow(delta, 1.0 - invq);

  // Direct grid estimate of ||osc_delta(phi)||_{W(L^inf, l^1)} via sliding
  // window max/min (monotone deques).
  double Rx = R + delta + 1.0;
  size_t m = static_cast<size_t>(std::round(2.0 * Rx / grid_dx)) + 1;
  std::vector<double> phi(m);
  for (size_t i = 0; i < m; ++i)
    phi[i] = gen.eval(-Rx + grid_dx * static_cast<double>(i));
  long w = static_cast<long>(std::floor(delta / grid_dx + 1e-12));
  std::vector<double> osc(m, 0.0);
  {
    std::deque<long> maxq, minq;
    auto push = [&](long j) {
      while (!maxq.empty() &&
             phi[static_cast<size_t>(maxq.back())] <= phi[static_cast<size_t>(j)])
        maxq.pop_back();
      maxq.push_back(j);
      while (!minq.empty() &&
             phi[static_cast<size_t>(minq.back())] >= phi[static_cast<size_t>(j)])
        minq.pop_back();
      minq.push_back(j);
    };
    long pushed = -1;
    for (long i = 0; i < static_cast<long>(m); ++i) {
      long hi = std::min<long>(i + w, static_cast<long>(m) - 1);
      while (pushed < hi) push(++pushed);
      while (maxq.front() < i - w) maxq.pop_front();
      while (minq.front() < i - w) minq.pop_front();
      double vmax = phi[static_cast<size_t>(maxq.front())];
      double vmin = phi[static_cast<size_t>(minq.front())];
      osc[static_cast<size_t>(i)] =
          std::max(vmax - phi[static_cast<size_t>(i)],
                   phi[static_cast<size_t>(i)] - vmin);
    }
  }
  SampledFunction oscf;
  oscf.x0 = -Rx;
  oscf.dx = grid_dx;
  oscf.v.assign(osc.begin(), osc.end());
  double direct = amalgam_norm(oscf, std::numeric_limits<double>::infinity(), 1.0);

  return OscillationEstimate{certified, direct, deriv_norm};
}

double ReconContext::grid_lo() const {
  return window.lo - static_cast<double>(interior_margin) - 2.0;
}
double ReconContext::grid_hi() const {
  return window.hi + static_cast<double>(interior_margin) + 2.0;
}

ReconContext make_recon_context(const SplineModel& model, Window window,
                                double dx) {
  ReconContext ctx;
  ctx.model = &model;
  ctx.window = window;
  ctx.dx = dx;
  ctx.interior_margin =
      static_cast<long>(std::ceil(model.psi_support_radius())) + 2;
  ctx.k_lo = static_cast<long>(std::floor(window.lo)) - ctx.interior_margin;
  ctx.k_hi = static_cast<long>(std::ceil(window.hi)) + ctx.interior_margin;
  return ctx;
}

std::vector<cplx> operator_Z(const ReconContext& ctx, const SamplingSet& set,
                             const WeightedSequence& coeffs) {
  std::vector<cplx> out(set.points.size(), cplx(0.0, 0.0));
  const SplineModel& model = *ctx.model;
  double R = model.gen.effective_radius(1e-16);
  double glo = model.gen.compact_support() ? model.gen.support_lo() : -R;
  double ghi = model.gen.compact_support() ? model.gen.support_hi() : R;
  for (size_t i = 0; i < set.points.size(); ++i) {
    double x = set.points[i];
    require(x >= ctx.window.lo - 1e-9 && x <= ctx.window.hi + 1e-9,
            ErrorCode::validation, "sample point outside the window");
    long j0 = static_cast<long>(std::ceil(x - ghi - 1e-12));
    long j1 = static_cast<long>(std::floor(x - glo + 1e-12));
    cplx acc(0.0, 0.0);
    for (long j = j0; j <= j1; ++j) {
      cplx cj = coeffs.at({j});
      if (cj == cplx(0.0, 0.0)) continue;
      double phi = model.gen.eval(x - static_cast<double>(j));
      if (phi != 0.0) acc += cj * phi;
    }
    out[i] = acc;
  }
  return out;
}

SampledFunction operator_I(const ReconContext& ctx, const SamplingSet& set,
                           const PartitionOfUnity& pou,
                           const std::vector<cplx>& c) {
  require(c.size() == set.points.size() && pou.size() == c.size(),
          ErrorCode::validation, "coefficient/point count mismatch");
  SampledFunction f;
  f.x0 = ctx.grid_lo();
  f.dx = ctx.dx;
  size_t n =
      static_cast<size_t>(std::round((ctx.grid_hi() - f.x0) / f.dx)) + 1;
  f.v.assign(n, cplx(0.0, 0.0));
  for (size_t k = 0; k < pou.size(); ++k) {
    if (c[k] == cplx(0.0, 0.0)) continue;
    const Bump& b = pou.bump(k);
    long j0 = std::max(0L, static_cast<long>(std::ceil((b.q0 - f.x0) / f.dx)));
    long j1 = std::min(static_cast<long>(n) - 1,
                       static_cast<long>(std::floor((b.q3 - f.x0) / f.dx)));
    for (long j = j0; j <= j1; ++j) {
      double g = b.eval(f.x_at(static_cast<size_t>(j)));
      if (g != 0.0) f.v[static_cast<size_t>(j)] += c[k] * g;
    }
  }
  return f;
}

WeightedSequence operator_P(const ReconContext& ctx, const SampledFunction& f) {
  return analyze(*ctx.model, f, ctx.k_lo, ctx.k_hi);
}

namespace {

WeightedSequence coeff_like(const ReconContext& ctx) {
  size_t n = static_cast<size_t>(ctx.k_hi - ctx.k_lo + 1);
  return WeightedSequence(1, {ctx.k_lo}, {n},
                          std::vector<cplx>(n, cplx(0.0, 0.0)));
}

}  // namespace

ReconResult reconstruct(const ReconContext& ctx, const SamplingSet& set,
                        const PartitionOfUnity& pou,
                        const std::vector<cplx>& samples,
                        const ReconOptions& opts) {
  require(samples.size() == set.points.size(), ErrorCode::validation,
          "sample vector length must match the sampling set");
  if (!(opts.certified_rho < 1.0))
    require(opts.allow_uncertified, ErrorCode::hypothesis_failed,
            "certified rho >= 1 for this model/delta pair; pass "
            "allow_uncertified to iterate on an empirical estimate");

  ReconResult res;
  res.coeffs = coeff_like(ctx);
  std::vector<cplx> residual(samples);
  int bad_streak = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    WeightedSequence update = operator_P(ctx, operator_I(ctx, set, pou, residual));
    for (size_t i = 0; i < res.coeffs.size(); ++i)
      res.coeffs.mutable_values()[i] += update.values()[i];
    res.iterations = it + 1;
    double err = lp_norm(update, opts.p);
    res.error_history.push_back(err);
    double cnorm = lp_norm(res.coeffs, opts.p);
    if (err <= opts.tol) {
      res.converged = true;
      break;
    }
    if (res.error_history.size() >= 2) {
      double prev = res.error_history[res.error_history.size() - 2];
      double ratio = (prev > 0.0) ? err / prev : 0.0;
      bool above_noise = err > 1e-13 * std::max(1.0, cnorm);
      if (above_noise && ratio >= 1.0) {
        if (++bad_streak >= 5)
          fail(ErrorCode::not_contracting,
               "iteration error ratio stayed >= 1 for 5 consecutive steps");
      } else {
        bad_streak = 0;
      }
      res.observed_ratio = std::max(res.observed_ratio, std::min(ratio, 1e9));
    }
    std::vector<cplx> zc = operator_Z(ctx, set, res.coeffs);
    for (size_t i = 0; i < residual.size(); ++i) residual[i] = samples[i] - zc[i];
  }
  if (!res.converged) {
    std::ostringstream os;
    os << "no convergence to tol " << opts.tol << " within " << opts.max_iter
       << " iterations";
    fail(ErrorCode::not_contracting, os.str());
  }
  return res;
}

double estimate_gamma(const ReconContext& ctx, const SamplingSet& set,
                      const PartitionOfUnity& pou, int iters, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  WeightedSequence v = coeff_like(ctx);
  long in_lo = ctx.k_lo + ctx.interior_margin,
       in_hi = ctx.k_hi - ctx.interior_margin;
  for (long k = in_lo; k <= in_hi; ++k)
    v.mutable_values()[v.flat_index({k})] = cplx(normal(rng), normal(rng));
  double gamma = 0.0;
  for (int it = 0; it < iters; ++it) {
    double before = lp_norm(v, 2.0);
    if (before == 0.0) break;
    for (cplx& z : v.mutable_values()) z /= before;
    WeightedSequence piz =
        operator_P(ctx, operator_I(ctx, set, pou, operator_Z(ctx, set, v)));
    for (size_t i = 0; i < v.size(); ++i)
      v.mutable_values()[i] -= piz.values()[i];
    // keep the error operator confined to interior coefficients
    for (size_t i = 0; i < v.size(); ++i) {
      long k = v.point_at(i)[0];
      if (k < in_lo || k > in_hi) v.mutable_values()[i] = cplx(0.0, 0.0);
    }
    gamma = lp_norm(v, 2.0);
  }
  return gamma;
}

}  // namespace decon
