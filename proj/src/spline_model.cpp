#include "decon/spline_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "decon/errors.hpp"

namespace decon {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNodes[8] = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975362};
constexpr double kGlWeights[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

template <typename F>
double gl8(const F& f, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) acc += kGlWeights[i] * f(mid + half * kGlNodes[i]);
  return acc * half;
}

template <typename F>
double adaptive_cell(const F& f, double a, double b, double tol, int depth,
                     bool* converged) {
  double whole = gl8(f, a, b);
  double mid = 0.5 * (a + b);
  double split = gl8(f, a, mid) + gl8(f, mid, b);
  if (std::abs(whole - split) < tol) return split;
  if (depth >= 24) {
    *converged = false;
    return split;
  }
  return adaptive_cell(f, a, mid, 0.5 * tol, depth + 1, converged) +
         adaptive_cell(f, mid, b, 0.5 * tol, depth + 1, converged);
}

// Composite Gauss-Legendre over unit cells with per-cell refinement until
// successive refinements differ by less than 1e-11.
template <typename F>
double adaptive_integral(const F& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  bool converged = true;
  double acc = 0.0;
  double cell_lo = std::floor(lo);
  for (double t = cell_lo; t < hi; t += 1.0)
    acc += adaptive_cell(f, std::max(t, lo), std::min(t + 1.0, hi), 1e-11, 0,
                         &converged);
  require(converged, ErrorCode::numeric, "quadrature failed to converge");
  return acc;
}

// Simpson over the product of grid samples of f and exact evaluations of g;
// integrates over the sample range [i0, i1].
template <typename G>
cplx simpson_product(const SampledFunction& f, size_t i0, size_t i1, const G& g) {
  if (i1 <= i0) return cplx(0.0, 0.0);
  auto val = [&](size_t i) { return f.v[i] * g(f.x_at(i)); };
  cplx acc(0.0, 0.0);
  size_t i = i0;
  while (i + 2 <= i1) {
    acc += (val(i) + 4.0 * val(i + 1) + val(i + 2)) * (f.dx / 3.0);
    i += 2;
  }
  if (i + 1 <= i1) acc += (val(i) + val(i + 1)) * (0.5 * f.dx);
  return acc;
}

}  // namespace

cplx SplineModel::psi_eval(double x) const {
  cplx acc(0.0, 0.0);
  for (size_t i = 0; i < b.size(); ++i) {
    cplx v = b.values()[i];
    if (v == cplx(0.0, 0.0)) continue;
    long j = b.point_at(i)[0];
    double phi = gen.eval(x + static_cast<double>(j));
    if (phi != 0.0) acc += v * phi;
  }
  return acc;
}

double SplineModel::psi_support_radius() const {
  double br = 0.0;
  for (int j = 0; j < b.dim(); ++j) {
    long lo = b.offset()[static_cast<size_t>(j)];
    long hi = lo + static_cast<long>(b.shape()[static_cast<size_t>(j)]) - 1;
    br = std::max({br, std::abs(static_cast<double>(lo)),
                   std::abs(static_cast<double>(hi))});
  }
  return br + gen.effective_radius(1e-14);
}

WeightedSequence autocorrelation(const Generator& gen, long k_max,
                                 double quad_step, double tail_tol) {
  (void)quad_step;
  require(k_max >= 0, ErrorCode::validation, "k_max must be >= 0");
  require(tail_tol > 0.0, ErrorCode::validation, "tail tolerance must be > 0");
  {
    // Discarded coefficients must be provably below the tail tolerance; use
    // the sharper kind-specific bound when available, else the certificate
    // bound C^2 K_alpha (1+k)^(-alpha).
    const DecayCertificate& cert = gen.certificate();
    double generic =
        cert.C * cert.C * constant_K(cert.alpha).closed_bound *
        std::pow(1.0 + static_cast<double>(k_max + 1), -cert.alpha);
    double bound = std::min(generic, gen.autocorr_tail_bound(
                                         static_cast<double>(k_max + 1)));
    if (bound > tail_tol) {
      std::ostringstream os;
      os << "autocorrelation radius " << k_max
         << " leaves a certified tail of " << bound << " > " << tail_tol;
      fail(ErrorCode::validation, os.str());
    }
  }

  std::vector<cplx> vals(static_cast<size_t>(2 * k_max + 1), cplx(0.0, 0.0));
  const PiecewisePoly* pp = gen.piecewise();
  double R = gen.effective_radius(1e-16);
  for (long k = 0; k <= k_max; ++k) {
    double ak;
    if (pp != nullptr) {
      ak = pp->integrate_product(*pp, static_cast<double>(k));
    } else {
      double lo = std::max(-R, -R - static_cast<double>(k));
      double hi = std::min(R, R - static_cast<double>(k));
      auto f = [&](double x) {
        return gen.eval(x) * gen.eval(x + static_cast<double>(k));
      };
      ak = adaptive_integral(f, lo, hi);
    }
    vals[static_cast<size_t>(k_max + k)] = ak;
    vals[static_cast<size_t>(k_max - k)] = ak;  // real generators: a_{-k} = a_k
  }
  WeightedSequence a(1, {-k_max}, {static_cast<size_t>(2 * k_max + 1)},
                     std::move(vals));
  return a.trimmed();
}

GramianRange gramian_check(const WeightedSequence& a, int grid_size) {
  SymbolGrid grid = build_symbol(a, std::max(grid_size, min_grid_size(a)));
  double max_imag = 0.0, min_real = std::numeric_limits<double>::infinity();
  for (const cplx& v : grid.values) {
    max_imag = std::max(max_imag, std::abs(v.imag()));
    min_real = std::min(min_real, v.real());
  }
  require(max_imag <= 1e-10, ErrorCode::validation,
          "gramian symbol is not real on the grid");
  require(min_real >= -1e-10, ErrorCode::validation,
          "gramian symbol is negative on the grid");
  CertifiedRange r = certify_range(grid);
  if (r.A_certified <= 0.0) {
    std::ostringstream os;
    os << "certified gramian lower bound is 0 (grid min " << r.grid_min
       << ", margin " << grid.lipschitz_margin << ")";
    fail(ErrorCode::not_riesz_basis, os.str());
  }
  return GramianRange{r.A_certified, r.B_certified, max_imag};
}

SplineModel build_spline_model(const Generator& gen,
                               const SplineModelOptions& opts) {
  SplineModel model(gen, opts);
  long k_max = opts.k_max;
  if (k_max < 0) {
    if (gen.compact_support()) {
      k_max = static_cast<long>(
          std::ceil(gen.support_hi() - gen.support_lo() - 1e-12)) - 1;
      k_max = std::max(k_max, 0L);
    } else {
      k_max = 1;
      while (gen.autocorr_tail_bound(static_cast<double>(k_max + 1)) >
                 opts.autocorr_tail_tol &&
             k_max < 1000000)
        ++k_max;
    }
  }
  model.a = autocorrelation(gen, k_max, opts.quad_step, opts.autocorr_tail_tol);

  int n = std::max(opts.grid_size, min_grid_size(model.a));
  GramianRange gr = gramian_check(model.a, n);
  model.A_gram = gr.A_gram;
  model.B_gram = gr.B_gram;

  DeconvResult dec;
  try {
    dec = deconvolve(model.a, n, opts.trunc_tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::not_invertible)
      fail(ErrorCode::not_riesz_basis, e.what());
    throw;
  }
  model.b = dec.b;
  model.residual_l2 = dec.residual_l2;
  model.biorth_defect = biorthogonality_defect(model, opts.defect_k_max);
  return model;
}

double biorthogonality_defect(const SplineModel& model, long k_max) {
  double lo, hi;
  if (model.gen.compact_support()) {
    lo = model.gen.support_lo();
    hi = model.gen.support_hi();
  } else {
    double R = model.gen.effective_radius(1e-14);
    lo = -R;
    hi = R;
  }
  lo = std::floor(lo * 2.0) / 2.0;  // keep integer/half-integer kinks on cell edges
  double defect = 0.0;
  for (long k = -k_max; k <= k_max; ++k) {
    // integrate phi(x) * conj(psi(x-k)) on half-unit cells, which keeps all
    // spline knots on cell boundaries
    cplx acc(0.0, 0.0);
    for (double t = lo; t < hi - 1e-12; t += 0.5) {
      double cl = t, cr = std::min(t + 0.5, hi);
      double mid = 0.5 * (cl + cr), half = 0.5 * (cr - cl);
      for (int i = 0; i < 8; ++i) {
        double x = mid + half * kGlNodes[i];
        double phi = model.gen.eval(x);
        if (phi != 0.0)
          acc += kGlWeights[i] * half * phi *
                 std::conj(model.psi_eval(x - static_cast<double>(k)));
      }
    }
    cplx want = (k == 0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    defect = std::max(defect, std::abs(acc - want));
  }
  return defect;
}

SampledFunction synthesize(const SplineModel& model, const WeightedSequence& c,
                           double x_lo, double x_hi, double dx) {
  require(c.dim() == 1, ErrorCode::validation, "synthesis needs 1-d coefficients");
  require(dx > 0.0 && x_hi > x_lo, ErrorCode::validation, "bad synthesis grid");
  SampledFunction f;
  f.x0 = x_lo;
  f.dx = dx;
  size_t n = static_cast<size_t>(std::round((x_hi - x_lo) / dx)) + 1;
  f.v.assign(n, cplx(0.0, 0.0));
  double R = model.gen.effective_radius(1e-16);
  for (size_t i = 0; i < c.size(); ++i) {
    cplx ck = c.values()[i];
    if (ck == cplx(0.0, 0.0)) continue;
    double k = static_cast<double>(c.point_at(i)[0]);
    double lo = model.gen.compact_support() ? k + model.gen.support_lo() : k - R;
    double hi = model.gen.compact_support() ? k + model.gen.support_hi() : k + R;
    long j0 = std::max(0L, static_cast<long>(std::ceil((lo - x_lo) / dx - 1e-12)));
    long j1 = std::min(static_cast<long>(n) - 1,
                       static_cast<long>(std::floor((hi - x_lo) / dx + 1e-12)));
    for (long j = j0; j <= j1; ++j) {
      double phi = model.gen.eval(f.x_at(static_cast<size_t>(j)) - k);
      if (phi != 0.0) f.v[static_cast<size_t>(j)] += ck * phi;
    }
  }
  return f;
}

WeightedSequence translate_inner_products(const Generator& gen,
                                          const SampledFunction& f, long k_lo,
                                          long k_hi) {
  require(k_hi >= k_lo, ErrorCode::validation, "empty translate range");
  std::vector<cplx> d(static_cast<size_t>(k_hi - k_lo + 1), cplx(0.0, 0.0));
  double R = gen.effective_radius(1e-16);
  double glo = gen.compact_support() ? gen.support_lo() : -R;
  double ghi = gen.compact_support() ? gen.support_hi() : R;
  for (long m = k_lo; m <= k_hi; ++m) {
    double lo = std::max(f.x0, glo + static_cast<double>(m));
    double hi = std::min(f.x_end(), ghi + static_cast<double>(m));
    if (hi <= lo) continue;
    size_t i0 = static_cast<size_t>(std::ceil((lo - f.x0) / f.dx - 1e-9));
    size_t i1 = static_cast<size_t>(std::floor((hi - f.x0) / f.dx + 1e-9));
    if (i1 >= f.v.size()) i1 = f.v.size() - 1;
    auto phi_m = [&](double x) { return gen.eval(x - static_cast<double>(m)); };
    d[static_cast<size_t>(m - k_lo)] = simpson_product(f, i0, i1, phi_m);
  }
  size_t nd = d.size();
  return WeightedSequence(1, {k_lo}, {nd}, std::move(d));
}

WeightedSequence analyze(const SplineModel& model, const SampledFunction& f,
                         long k_lo, long k_hi) {
  require(k_hi >= k_lo, ErrorCode::validation, "empty analysis range");
  long b_lo = model.b.offset()[0];
  long b_hi = b_lo + static_cast<long>(model.b.shape()[0]) - 1;

  long m_lo = k_lo - b_hi, m_hi = k_hi - b_lo;
  WeightedSequence d = translate_inner_products(model.gen, f, m_lo, m_hi);

  // c_k = sum_j conj(b_j) d_{k-j}
  std::vector<cplx> out(static_cast<size_t>(k_hi - k_lo + 1), cplx(0.0, 0.0));
  for (long k = k_lo; k <= k_hi; ++k) {
    cplx acc(0.0, 0.0);
    for (long j = b_lo; j <= b_hi; ++j) {
      cplx bj = model.b.at({j});
      if (bj == cplx(0.0, 0.0)) continue;
      acc += std::conj(bj) * d.at({k - j});
    }
    out[static_cast<size_t>(k - k_lo)] = acc;
  }
  size_t nc = out.size();
  return WeightedSequence(1, {k_lo}, {nc}, std::move(out));
}

RatioRange riesz_ratio_empirical(const SplineModel& model, double p, int trials,
                                 uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const long width = 64;
  double pad = model.gen.effective_radius(1e-14) + 1.0;
  RatioRange range{std::numeric_limits<double>::infinity(), 0.0};
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> cv(static_cast<size_t>(width));
    for (cplx& z : cv)
      z = cplx(normal(rng), normal(rng)) / std::sqrt(2.0);
    WeightedSequence c(1, {-width / 2}, {static_cast<size_t>(width)},
                       std::move(cv));
    SampledFunction f =
        synthesize(model, c, -static_cast<double>(width / 2) - pad,
                   static_cast<double>(width / 2) + pad, model.opts.quad_step);
    double ratio = lp_norm(f, p) / lp_norm(c, p);
    range.min_ratio = std::min(range.min_ratio, ratio);
    range.max_ratio = std::max(range.max_ratio, ratio);
  }
  return range;
}

}  // namespace decon
