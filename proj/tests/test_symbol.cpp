#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "decon/corpus.hpp"
#include "decon/errors.hpp"
#include "decon/symbol.hpp"

using namespace decon;

namespace {

constexpr double kPi = std::numbers::pi;

WeightedSequence seq1d(long offset, std::vector<cplx> v) {
  size_t n = v.size();
  return WeightedSequence(1, {offset}, {n}, std::move(v));
}

WeightedSequence hat_autocorr() {
  return seq1d(-1, {{1.0 / 6, 0}, {2.0 / 3, 0}, {1.0 / 6, 0}});
}

// Dense complex Toeplitz window solve of (a * x)_k = delta_k, |k| <= w.
// Kept independent of the symbol pipeline.
std::vector<cplx> toeplitz_unit_solve(const WeightedSequence& a, long w) {
  long n = 2 * w + 1;
  std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
  std::vector<cplx> rhs(n, cplx(0, 0));
  rhs[w] = cplx(1, 0);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) m[r][c] = a.at({r - c});
  for (long col = 0; col < n; ++col) {
    long piv = col;
    for (long r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    REQUIRE(std::abs(m[piv][col]) > 0.0);
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (long r = col + 1; r < n; ++r) {
      cplx f = m[r][col] / m[col][col];
      if (f == cplx(0, 0)) continue;
      for (long c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<cplx> x(n);
  for (long r = n - 1; r >= 0; --r) {
    cplx acc = rhs[r];
    for (long c = r + 1; c < n; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return x;
}

}  // namespace

TEST_CASE("unit sequence has the constant symbol, exactly") {
  SymbolGrid g = build_symbol(WeightedSequence::delta(1), 64);
  CHECK(g.lipschitz_margin == 0.0);
  for (const cplx& v : g.values) CHECK(v == cplx(1.0, 0.0));
  CertifiedRange r = certify_range(g);
  CHECK(r.A_certified == 1.0);
  CHECK(r.B_certified == 1.0);
}

TEST_CASE("hat autocorrelation symbol matches its closed form") {
  int n = 256;
  SymbolGrid g = build_symbol(hat_autocorr(), n);
  for (int j = 0; j < n; ++j) {
    double w = static_cast<double>(j) / n;
    double expected = 2.0 / 3.0 + std::cos(2.0 * kPi * w) / 3.0;
    CHECK(std::abs(g.values[j] - cplx(expected, 0.0)) <= 1e-12);
  }
}

TEST_CASE("difference filter: symbol vanishes and inversion refuses") {
  WeightedSequence diff = seq1d(0, {{1, 0}, {-1, 0}});
  for (int n : {64, 256, 1024}) {
    CertifiedRange r = certify_range(build_symbol(diff, n));
    CHECK(r.A_certified == 0.0);
  }
  CHECK_THROWS_AS(deconvolve(diff, 256, 1e-9), Error);
  try {
    deconvolve(diff, 256, 1e-9);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_invertible);
  }
}

TEST_CASE("aliasing precondition names the minimal grid") {
  std::mt19937_64 rng(5);
  WeightedSequence wide = corpus::gaussian_1d(rng, 33);
  CHECK(min_grid_size(wide) == 128);
  try {
    build_symbol(wide, 64);
    FAIL("expected GridTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::grid_too_small);
    CHECK(std::string(e.what()).find("128") != std::string::npos);
  }
  CHECK_THROWS_AS(build_symbol(wide, 192), Error);  // not a power of two
}

TEST_CASE("certified range sandwiches the analytic extrema of the cosine symbol") {
  // (2 + cos 2 pi w)/3 has range [1/3, 1]
  double prev_gap = 1e300;
  for (int n : {64, 256, 1024, 4096}) {
    CertifiedRange r = certify_range(build_symbol(hat_autocorr(), n));
    CHECK(r.A_certified <= 1.0 / 3.0 + 1e-15);
    CHECK(r.B_certified >= 1.0 - 1e-15);
    double gap = (1.0 / 3.0 - r.A_certified) + (r.B_certified - 1.0);
    CHECK(gap >= 0.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CertifiedRange fine = certify_range(build_symbol(hat_autocorr(), 4096));
  CHECK(fine.A_certified == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
  CHECK(fine.B_certified == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("certified range soundness for a truncated geometric symbol") {
  // a_k = q^k for 0 <= k <= K: the infinite symbol 1/(1 - q e^{2 pi i w})
  // has |range| [1/(1+q), 1/(1-q)]; truncation moves it by < q^{K+1}/(1-q).
  double q = 0.5;
  int K = 45;
  std::vector<cplx> v(K + 1);
  for (int k = 0; k <= K; ++k) v[k] = cplx(std::pow(q, k), 0.0);
  WeightedSequence a = seq1d(0, std::move(v));
  double corr = std::pow(q, K + 1) / (1.0 - q);
  for (int n : {128, 512, 2048}) {
    CertifiedRange r = certify_range(build_symbol(a, n));
    CHECK(r.A_certified <= 1.0 / (1.0 + q) + corr);
    CHECK(r.B_certified >= 1.0 / (1.0 - q) - corr);
  }
}

TEST_CASE("deconvolving the unit gives the unit with zero residual") {
  DeconvResult r = deconvolve(WeightedSequence::delta(1), 64, 1e-9);
  CHECK(r.b.size() == 1);
  CHECK(r.b.values()[0] == cplx(1.0, 0.0));
  CHECK(r.residual_l2 == 0.0);
  CHECK(r.A_certified == 1.0);
}

TEST_CASE("single off-origin point inverts in closed form") {
  WeightedSequence a = seq1d(3, {{0.0, 2.0}});
  DeconvResult r = deconvolve(a, 64, 1e-9);
  CHECK(r.b.offset()[0] == -3);
  CHECK(std::abs(r.b.values()[0] - cplx(1.0, 0.0) / cplx(0.0, 2.0)) == 0.0);
  CHECK(r.residual_l2 <= 1e-15);
}

TEST_CASE("hat autocorrelation inverse: closed form and Toeplitz oracle") {
  DeconvResult r = deconvolve(hat_autocorr(), 1024, 1e-12);
  // closed form: b_k = sqrt(3) (-1)^k (2 - sqrt 3)^{|k|}
  double s3 = std::sqrt(3.0), qd = 2.0 - std::sqrt(3.0);
  CHECK(std::abs(r.b.at({0}) - cplx(s3, 0)) <= 1e-9);
  for (long k = 1; k <= 8; ++k) {
    double want = s3 * std::pow(qd, static_cast<double>(k)) * ((k % 2) ? -1.0 : 1.0);
    CHECK(std::abs(r.b.at({k}) - cplx(want, 0)) <= 1e-9);
    CHECK(std::abs(r.b.at({-k}) - cplx(want, 0)) <= 1e-9);
  }
  // independent banded solve on a window of width 81, central 41 entries
  std::vector<cplx> oracle = toeplitz_unit_solve(hat_autocorr(), 40);
  for (long k = -20; k <= 20; ++k)
    CHECK(std::abs(r.b.at({k}) - oracle[k + 40]) <= 1e-8);
  // residual is recomputed, certified range is stored
  CHECK(r.residual_l2 <= 10.0 * 1e-12 * r.B_certified);
  CHECK(r.A_certified > 0.3);
}

TEST_CASE("deconvolution residual obeys the truncation budget on a corpus") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 25; ++t) {
    corpus::ConditionedDraw d = corpus::conditioned_1d(rng, 9, 0.15, 1e-9);
    CHECK(d.dec.residual_l2 <= 10.0 * 1e-9 * d.dec.B_certified);
    CHECK(d.dec.A_certified <= d.dec.B_certified);
  }
}

TEST_CASE("inverse of the inverse recovers well-conditioned sequences") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 10; ++t) {
    corpus::ConditionedDraw d = corpus::conditioned_1d(rng, 9, 0.15, 1e-10);
    DeconvResult back = deconvolve(d.dec.b, 4096, 1e-10);
    double scale = d.a.linf();
    CHECK(max_abs_diff(back.b, d.a.trimmed()) <= 1e-6 * scale);
  }
}

TEST_CASE("op momentum of the unit is exactly one") {
  OpMomentumEstimate e =
      momentum_op(WeightedSequence::delta(1), MultiIndex{0}, 64);
  CHECK(e.lower == 1.0);
  CHECK(e.upper == 1.0);
}

TEST_CASE("op momentum estimates sandwich the l2/l1 momenta") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    WeightedSequence a = corpus::gaussian_1d(rng, 9);
    for (int e = 0; e <= 2; ++e) {
      MultiIndex al{e};
      OpMomentumEstimate est = momentum_op(a, al, 2048);
      CHECK(est.lower <= est.upper);
      CHECK(momentum(a, al, NormTag::l2).value <= est.upper * (1 + 1e-12));
      CHECK(est.upper <= momentum(a, al, NormTag::l1).value * (1 + 1e-12));
    }
  }
}

TEST_CASE("op momentum brackets tighten under grid doubling") {
  WeightedSequence a = hat_autocorr();
  double prev_gap = 1e300, prev_lower = 0.0;
  for (int n : {64, 128, 256, 512}) {
    OpMomentumEstimate e = momentum_op(a, MultiIndex{0}, n);
    CHECK(e.lower <= 1.0 + 1e-15);   // analytic max of the symbol
    CHECK(e.upper >= 1.0 - 1e-15);
    CHECK(e.lower >= prev_lower);    // nested grids
    double gap = e.upper - e.lower;
    CHECK(gap < prev_gap);
    prev_gap = gap;
    prev_lower = e.lower;
  }
}

TEST_CASE("derivative identity: constant symbol has zero defect") {
  WeightedSequence a = WeightedSequence::delta(1).scaled(cplx(3.0, 0.0));
  CHECK(check_derivative_identity(build_symbol(a, 128)) <= 1e-14);
}

TEST_CASE("derivative identity defect decays at second order") {
  double d1 = check_derivative_identity(build_symbol(hat_autocorr(), 512));
  double d2 = check_derivative_identity(build_symbol(hat_autocorr(), 1024));
  CHECK(d1 / d2 >= 3.5);
  CHECK(d1 / d2 <= 4.5);
}

TEST_CASE("derivative identity defect is small for mild random symbols") {
  // |a_{+-1}| <= 0.05 keeps the defect constant below 605, so at N = 4096
  // the defect sits under (h^2/6) * 605 < 1e-6
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  for (int t = 0; t < 5; ++t) {
    std::vector<cplx> v(3);
    v[0] = corpus::cnormal(rng) * (0.05 * u(rng));
    v[1] = cplx(1.0, 0.0);
    v[2] = corpus::cnormal(rng) * (0.05 * u(rng));
    WeightedSequence a = seq1d(-1, std::move(v));
    CHECK(check_derivative_identity(build_symbol(a, 4096)) <= 1e-6);
  }
}

TEST_CASE("grid ladder: slow inverse decay raises GridTooSmall") {
  // symbol min ~ 0.05 puts the inverse decay length near 60 lattice steps,
  // far beyond what a 64-grid resolves at tolerance 1e-9
  WeightedSequence a = seq1d(0, {{1.0, 0}, {-0.95, 0}});
  CHECK_THROWS_AS(deconvolve(a, 64, 1e-9), Error);
  try {
    deconvolve(a, 64, 1e-9);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::grid_too_small);
  }
  // a large enough grid resolves it
  DeconvResult r = deconvolve(a, 4096, 1e-9);
  CHECK(r.residual_l2 <= 1e-6);
  std::vector<cplx> oracle = toeplitz_unit_solve(a, 40);
  CHECK(std::abs(r.b.at({0}) - oracle[40]) <= 1e-7);
}
