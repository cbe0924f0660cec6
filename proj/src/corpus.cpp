#include "decon/corpus.hpp"

#include <cmath>

#include "decon/errors.hpp"

namespace decon::corpus {

cplx cnormal(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double re = n(rng), im = n(rng);
  return cplx(re, im) / std::sqrt(2.0);
}

WeightedSequence gaussian_1d(std::mt19937_64& rng, int support) {
  std::vector<cplx> v(static_cast<size_t>(support));
  for (cplx& z : v) z = cnormal(rng);
  return WeightedSequence(1, {-(support / 2)}, {static_cast<size_t>(support)},
                          std::move(v));
}

WeightedSequence enveloped_2d(std::mt19937_64& rng, int s1, int s2) {
  std::vector<cplx> v(static_cast<size_t>(s1) * static_cast<size_t>(s2));
  WeightedSequence a(2, {-(s1 / 2), -(s2 / 2)},
                     {static_cast<size_t>(s1), static_cast<size_t>(s2)},
                     std::move(v));
  for (size_t i = 0; i < a.size(); ++i) {
    std::vector<long> k = a.point_at(i);
    double damp = std::pow(
        1.0 + std::abs(static_cast<double>(k[0])) + std::abs(static_cast<double>(k[1])),
        -3.0);
    a.mutable_values()[i] = cnormal(rng) * damp;
  }
  return a;
}

namespace {

ConditionedDraw conditioned(std::mt19937_64& rng, int max_support,
                            double ratio_min, double trunc_tol, int dim,
                            int base_grid, int max_grid) {
  std::uniform_int_distribution<int> size_dist(1, (max_support - 1) / 2);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    WeightedSequence a = WeightedSequence::delta(1);
    if (dim == 1) {
      int sz = 2 * size_dist(rng) + 1;
      a = gaussian_1d(rng, sz);
    } else {
      int s1 = 2 * size_dist(rng) + 1;
      int s2 = 2 * size_dist(rng) + 1;
      a = enveloped_2d(rng, s1, s2);
    }
    CertifiedRange r = certify_range(build_symbol(a, base_grid));
    if (r.A_certified < ratio_min * r.B_certified) continue;
    for (int n = base_grid; n <= max_grid; n *= 4) {
      try {
        return ConditionedDraw{a, deconvolve(a, n, trunc_tol)};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::grid_too_small) throw;
      }
    }
    // inverse decays too slowly for the grid ladder; treat as rejected
  }
  fail(ErrorCode::numeric, "conditioned corpus draw did not terminate");
}

}  // namespace

ConditionedDraw conditioned_1d(std::mt19937_64& rng, int max_support,
                               double ratio_min, double trunc_tol) {
  return conditioned(rng, max_support, ratio_min, trunc_tol, 1, 8192, 262144);
}

ConditionedDraw conditioned_2d(std::mt19937_64& rng, int max_support,
                               double ratio_min, double trunc_tol) {
  return conditioned(rng, max_support, ratio_min, trunc_tol, 2, 256, 1024);
}

std::vector<double> jittered_points(std::mt19937_64& rng, Window w,
                                    double spacing, double amp) {
  require(spacing > 2.0 * amp && amp >= 0.0, ErrorCode::validation,
          "need spacing > 2*amp for a sorted jittered lattice");
  std::uniform_real_distribution<double> u(-amp, amp);
  std::vector<double> pts;
  long n = static_cast<long>(std::floor(w.length() / spacing));
  for (long i = 0; i < n; ++i)
    pts.push_back(w.lo + spacing * (static_cast<double>(i) + 0.5) + u(rng));
  return pts;
}

WeightedSequence random_coeffs(std::mt19937_64& rng, long k_lo, long k_hi) {
  std::vector<cplx> v(static_cast<size_t>(k_hi - k_lo + 1));
  for (cplx& z : v) z = cnormal(rng);
  size_t nv = v.size();
  return WeightedSequence(1, {k_lo}, {nv}, std::move(v));
}

}  // namespace decon::corpus
