#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "decon/bounds.hpp"
#include "decon/corpus.hpp"
#include "decon/errors.hpp"
#include "decon/recon.hpp"

using namespace decon;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> integers_on(double lo, double hi) {
  std::vector<double> v;
  for (double x = std::ceil(lo); x <= hi; x += 1.0) v.push_back(x);
  return v;
}
}  // namespace

TEST_CASE("set validation: integers, gaps, jitter") {
  Window w{0.0, 100.0};
  SamplingSet s = validate_set(integers_on(0, 100), 0.51, w);
  CHECK(s.N_X == 1);

  // one point removed: gap 2 >= 2 * 0.51
  std::vector<double> holey = integers_on(0, 100);
  holey.erase(holey.begin() + 50);
  try {
    validate_set(holey, 0.51, w);
    FAIL("expected NotDense");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_dense);
  }

  // jittered integers, |u| <= 0.2: delta = 0.71 suffices
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  std::vector<double> jit;
  for (double x = 0.0; x <= 100.0; x += 1.0) jit.push_back(x + u(rng));
  Window wj{jit.front(), jit.back()};
  SamplingSet sj = validate_set(jit, 0.71, wj);
  CHECK(sj.N_X <= 2);

  CHECK_THROWS_AS(validate_set({3.0, 2.0, 4.0}, 2.0, w), Error);  // unsorted
  CHECK_THROWS_AS(validate_set({}, 0.5, w), Error);               // empty
  CHECK_THROWS_AS(validate_set(integers_on(0, 100), 0.5, w), Error);  // 2d = gap
}

TEST_CASE("partition of unity: sums to one, subordinate, small integrals") {
  std::mt19937_64 rng(42);
  Window w{0.0, 40.0};
  SamplingSet set = validate_set(corpus::jittered_points(rng, w, 0.7, 0.15),
                                 0.51, w);
  PartitionOfUnity pou(set);
  REQUIRE(pou.size() == set.points.size());
  for (int i = 0; i <= 4000; ++i) {
    double x = w.lo + w.length() * i / 4000.0;
    CHECK(std::abs(pou.sum_at(x) - 1.0) <= 1e-12);
  }
  for (size_t k = 0; k < pou.size(); ++k) {
    const Bump& b = pou.bump(k);
    CHECK(b.q0 > set.points[k] - set.delta);
    CHECK(b.q3 < set.points[k] + set.delta);
    CHECK(b.integral() <= 2.0 * set.delta);
    CHECK(b.integral() > 0.0);
  }
}

TEST_CASE("oscillation bound: hat numbers at q = inf") {
  OscillationEstimate e = oscillation_bound(Generator::bspline(2), 0.1, kInf);
  CHECK(e.deriv_amalgam == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e.certified == doctest::Approx(0.6).epsilon(1e-12));
  // grid oracle pins the direct estimate near 4 * delta for the hat
  CHECK(e.direct_estimate <= e.certified);
  CHECK(e.direct_estimate == doctest::Approx(0.4).epsilon(0.03));

  OscillationEstimate half = oscillation_bound(Generator::bspline(2), 0.05, kInf);
  CHECK(half.certified == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("oscillation dominance across the generator zoo") {
  for (const Generator& g :
       {Generator::bspline(2), Generator::bspline(3), Generator::bspline(4),
        Generator::two_sided_exponential(1.0, 2.5)}) {
    for (double delta : {0.05, 0.1, 0.2, 0.4}) {
      for (double q : {2.0, kInf}) {
        OscillationEstimate e = oscillation_bound(g, delta, q);
        CHECK(e.direct_estimate <= e.certified * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("oscillation bound requires derivative access and q > 1") {
  Generator s = Generator::user_sampled(-1.0, 0.5, {0.0, 1.0, 1.0, 0.0}, 2.0);
  CHECK_THROWS_AS(oscillation_bound(s, 0.1, kInf), Error);
  CHECK_THROWS_AS(oscillation_bound(Generator::bspline(2), 0.1, 1.0), Error);
}

TEST_CASE("Z samples exactly; linearity; hat at the integers") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{-8.0, 8.0};
  ReconContext ctx = make_recon_context(hat, w);
  SamplingSet set = validate_set(integers_on(-8, 8), 0.6, w);

  std::vector<cplx> z =
      operator_Z(ctx, set, WeightedSequence::delta(1));
  for (size_t i = 0; i < set.points.size(); ++i) {
    cplx want = (set.points[i] == 0.0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    CHECK(z[i] == want);
  }

  std::mt19937_64 rng(43);
  WeightedSequence c1 = corpus::random_coeffs(rng, -4, 4);
  WeightedSequence c2 = corpus::random_coeffs(rng, -4, 4);
  WeightedSequence sum(1, {-4}, {9}, [&] {
    std::vector<cplx> v(9);
    for (size_t i = 0; i < 9; ++i) v[i] = c1.values()[i] + c2.values()[i];
    return v;
  }());
  std::vector<cplx> za = operator_Z(ctx, set, c1);
  std::vector<cplx> zb = operator_Z(ctx, set, c2);
  std::vector<cplx> zs = operator_Z(ctx, set, sum);
  for (size_t i = 0; i < zs.size(); ++i)
    CHECK(std::abs(zs[i] - za[i] - zb[i]) <= 1e-14);

  SamplingSet outside = validate_set({-8.0, 9.0}, 9.0, Window{-8.0, 9.0});
  CHECK_THROWS_AS(operator_Z(ctx, outside, c1), Error);
}

TEST_CASE("Z norms stay below the certified upper frame constant") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{0.0, 64.0};
  ReconContext ctx = make_recon_context(hat, w);
  std::mt19937_64 rng(44);
  SamplingSet set =
      validate_set(corpus::jittered_points(rng, w, 0.5, 0.1), 0.36, w);
  double deriv = oscillation_bound(hat.gen, 0.25, kInf).deriv_amalgam;
  double ds = solve_max_delta(hat.gen.certificate(), hat.A_gram, deriv, kInf, 0.9);
  double rho = sampling_rho(hat.gen.certificate(), hat.A_gram, deriv, kInf, ds);
  long in_lo = ctx.k_lo + 2 * ctx.interior_margin;
  long in_hi = ctx.k_hi - 2 * ctx.interior_margin;
  for (int t = 0; t < 30; ++t) {
    WeightedSequence c = corpus::random_coeffs(rng, in_lo, in_hi);
    SampledFunction f = synthesize(hat, c, ctx.grid_lo(), ctx.grid_hi(), ctx.dx);
    std::vector<cplx> zf = operator_Z(ctx, set, c);
    for (double p : {1.0, 2.0, kInf}) {
      SamplingFrameBounds fb = sampling_frame_bounds(
          hat.gen.certificate(), hat.A_gram, set.N_X, ds, rho, p);
      CHECK(lp_norm(zf, p) <= fb.C_p * lp_norm(f, p) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("I interpolates the partition: constants, bumps, norm bound") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{0.0, 20.0};
  ReconContext ctx = make_recon_context(hat, w);
  std::mt19937_64 rng(45);
  SamplingSet set =
      validate_set(corpus::jittered_points(rng, w, 0.5, 0.1), 0.36, w);
  PartitionOfUnity pou(set);

  std::vector<cplx> ones(set.points.size(), cplx(1.0, 0.0));
  SampledFunction f = operator_I(ctx, set, pou, ones);
  for (size_t i = 0; i < f.v.size(); ++i) {
    double x = f.x_at(i);
    if (x >= w.lo && x <= w.hi) CHECK(std::abs(f.v[i] - cplx(1, 0)) <= 1e-12);
  }

  std::vector<cplx> single(set.points.size(), cplx(0.0, 0.0));
  single[10] = cplx(1.0, 0.0);
  SampledFunction g = operator_I(ctx, set, pou, single);
  for (size_t i = 0; i < g.v.size(); ++i) {
    double x = g.x_at(i);
    if (std::abs(g.v[i]) > 0.0) {
      CHECK(x > set.points[10] - set.delta);
      CHECK(x < set.points[10] + set.delta);
    }
  }

  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> c(set.points.size());
    for (cplx& z : c) z = corpus::cnormal(rng);
    SampledFunction ic = operator_I(ctx, set, pou, c);
    CHECK(lp_norm(ic, 2.0) <=
          std::sqrt(2.0 * set.delta) * lp_norm(c, 2.0) * (1.0 + 1e-9));
  }
}

TEST_CASE("P projects onto the spline space") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{-16.0, 16.0};
  ReconContext ctx = make_recon_context(hat, w);
  std::mt19937_64 rng(46);

  // P restores coefficients of functions already in the space
  WeightedSequence c = corpus::random_coeffs(rng, -6, 6);
  SampledFunction f = synthesize(hat, c, ctx.grid_lo(), ctx.grid_hi(), ctx.dx);
  WeightedSequence pc = operator_P(ctx, f);
  CHECK(max_abs_diff(pc, c) <= 1e-7);

  // an orthogonalized bump has a near-zero projection
  SampledFunction bump = f;
  for (size_t i = 0; i < bump.v.size(); ++i) {
    double x = bump.x_at(i);
    bump.v[i] = std::exp(-8.0 * x * x) * std::cos(40.0 * x);
  }
  WeightedSequence pb = operator_P(ctx, bump);
  SampledFunction proj =
      synthesize(hat, pb, ctx.grid_lo(), ctx.grid_hi(), ctx.dx);
  SampledFunction perp = bump;
  for (size_t i = 0; i < perp.v.size(); ++i) perp.v[i] -= proj.v[i];
  WeightedSequence pperp = operator_P(ctx, perp);
  CHECK(lp_norm(pperp, 2.0) <= 1e-6 * std::max(1.0, lp_norm(pb, 2.0)));
}

TEST_CASE("P operator norm stays below the numeric amalgam product") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{-16.0, 16.0};
  ReconContext ctx = make_recon_context(hat, w);

  double r = std::ceil(hat.psi_support_radius()) + 1.0;
  SampledFunction psi;
  psi.x0 = -r;
  psi.dx = 1.0 / 64;
  psi.v.resize(static_cast<size_t>(std::round(2 * r * 64)) + 1);
  for (size_t i = 0; i < psi.v.size(); ++i) psi.v[i] = hat.psi_eval(psi.x_at(i));
  double psi_w = amalgam_norm(psi, kInf, 1.0);
  SampledFunction phi;
  phi.x0 = -2.0;
  phi.dx = 1.0 / 64;
  phi.v.resize(257);
  for (size_t i = 0; i < phi.v.size(); ++i) phi.v[i] = hat.gen.eval(phi.x_at(i));
  double phi_w = amalgam_norm(phi, kInf, 1.0);

  std::mt19937_64 rng(47);
  for (int t = 0; t < 10; ++t) {
    SampledFunction f;
    f.x0 = ctx.grid_lo();
    f.dx = ctx.dx;
    size_t n = static_cast<size_t>(std::round((ctx.grid_hi() - f.x0) / f.dx)) + 1;
    f.v.resize(n);
    for (size_t i = 0; i < n; ++i) {
      double x = f.x_at(i);
      f.v[i] = (std::abs(x) <= 14.0) ? corpus::cnormal(rng) *
                                           std::exp(-0.02 * x * x)
                                     : cplx(0.0, 0.0);
    }
    WeightedSequence pf = operator_P(ctx, f);
    SampledFunction sf = synthesize(hat, pf, ctx.grid_lo(), ctx.grid_hi(), ctx.dx);
    for (double p : {1.0, 2.0, kInf})
      CHECK(lp_norm(sf, p) <= phi_w * psi_w * lp_norm(f, p) * (1.0 + 1e-6));
  }
}

TEST_CASE("reconstruction: exact integer samples interpolate back") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{0.0, 48.0};
  ReconContext ctx = make_recon_context(hat, w);
  SamplingSet set = validate_set(integers_on(0, 48), 0.75, w);
  PartitionOfUnity pou(set);

  std::mt19937_64 rng(48);
  WeightedSequence c_true = corpus::random_coeffs(
      rng, ctx.k_lo + 2 * ctx.interior_margin, ctx.k_hi - 2 * ctx.interior_margin);
  std::vector<cplx> samples = operator_Z(ctx, set, c_true);

  ReconOptions opts;
  opts.tol = 1e-11;
  opts.allow_uncertified = true;
  opts.certified_rho = 2.0;  // certified value at this density is useless
  ReconResult rr = reconstruct(ctx, set, pou, samples, opts);
  CHECK(rr.converged);
  CHECK(max_abs_diff(rr.coeffs, c_true) <= 1e-8);

  std::vector<cplx> resampled = operator_Z(ctx, set, rr.coeffs);
  for (size_t i = 0; i < samples.size(); ++i)
    CHECK(std::abs(resampled[i] - samples[i]) <= 1e-10);

  // error history is geometric
  for (size_t i = 2; i + 1 < rr.error_history.size(); ++i)
    if (rr.error_history[i] > 1e-12)
      CHECK(rr.error_history[i + 1] / rr.error_history[i] < 1.0);
}

TEST_CASE("reconstruction: zero samples give zero coefficients immediately") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{0.0, 16.0};
  ReconContext ctx = make_recon_context(hat, w);
  SamplingSet set = validate_set(integers_on(0, 16), 0.75, w);
  PartitionOfUnity pou(set);
  std::vector<cplx> zeros(set.points.size(), cplx(0.0, 0.0));
  ReconOptions opts;
  opts.allow_uncertified = true;
  ReconResult rr = reconstruct(ctx, set, pou, zeros, opts);
  CHECK(rr.iterations == 1);
  CHECK(lp_norm(rr.coeffs, kInf) == 0.0);
}

TEST_CASE("reconstruction refuses uncertified density without the override") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{0.0, 16.0};
  ReconContext ctx = make_recon_context(hat, w);
  SamplingSet set = validate_set(integers_on(0, 16), 0.75, w);
  PartitionOfUnity pou(set);
  std::vector<cplx> samples(set.points.size(), cplx(1.0, 0.0));
  ReconOptions opts;  // certified_rho defaults to infinity
  try {
    reconstruct(ctx, set, pou, samples, opts);
    FAIL("expected HypothesisFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::hypothesis_failed);
  }
}

TEST_CASE("reconstruction surfaces non-convergence as NotContracting") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{0.0, 16.0};
  ReconContext ctx = make_recon_context(hat, w);
  SamplingSet set = validate_set(integers_on(0, 16), 0.75, w);
  PartitionOfUnity pou(set);
  std::mt19937_64 rng(49);
  WeightedSequence c = corpus::random_coeffs(rng, 2, 14);
  std::vector<cplx> samples = operator_Z(ctx, set, c);
  ReconOptions opts;
  opts.allow_uncertified = true;
  opts.tol = 1e-13;
  opts.max_iter = 2;  // cannot finish in two steps
  try {
    reconstruct(ctx, set, pou, samples, opts);
    FAIL("expected NotContracting");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_contracting);
  }
}

TEST_CASE("empirical contraction estimate is below one at dense spacing") {
  SplineModel hat = build_spline_model(Generator::bspline(2));
  Window w{0.0, 32.0};
  ReconContext ctx = make_recon_context(hat, w);
  std::mt19937_64 rng(50);
  SamplingSet set =
      validate_set(corpus::jittered_points(rng, w, 0.5, 0.1), 0.36, w);
  PartitionOfUnity pou(set);
  double gamma = estimate_gamma(ctx, set, pou, 30, 7);
  CHECK(gamma < 1.0);
  CHECK(gamma > 0.0);
}
