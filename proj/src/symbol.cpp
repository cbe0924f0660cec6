#include "decon/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "decon/errors.hpp"
#include "decon/fft.hpp"

namespace decon {

namespace {

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

int next_pow2(long n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

double lipschitz_margin_for(const WeightedSequence& a, int grid_size) {
  double sum = 0.0;
  for (int j = 0; j < a.dim(); ++j)
    sum += momentum(a, MultiIndex::unit(a.dim(), j), NormTag::l1).value;
  return std::numbers::pi * std::sqrt(static_cast<double>(a.dim())) * sum /
         static_cast<double>(grid_size);
}

size_t grid_count(int dim, int n) {
  size_t c = 1;
  for (int j = 0; j < dim; ++j) c *= static_cast<size_t>(n);
  return c;
}

// Centered lattice coordinate of slot i on an N-grid: range [-N/2, N/2).
long centered(long i, int n) { return i < n / 2 ? i : i - n; }

// Grid inverse of the symbol: unnormalized values of b on the embedding grid.
std::vector<cplx> invert_symbol_grid(const SymbolGrid& grid) {
  std::vector<cplx> data(grid.values);
  for (cplx& v : data) v = cplx(1.0, 0.0) / v;
  std::vector<int> shape(static_cast<size_t>(grid.dim), grid.grid_size);
  fft_nd(data, shape, -1);
  double scale = 1.0 / static_cast<double>(grid_count(grid.dim, grid.grid_size));
  for (cplx& v : data) v *= scale;
  return data;
}

double grid_l2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

int min_grid_size(const WeightedSequence& a) {
  return std::max(64, next_pow2(2 * a.max_width()));
}

SymbolGrid build_symbol(const WeightedSequence& a, int grid_size) {
  int min_n = min_grid_size(a);
  if (!is_pow2(grid_size) || grid_size < min_n) {
    std::ostringstream os;
    os << "grid size " << grid_size << " violates the aliasing condition; "
       << "need a power of two >= " << min_n;
    fail(ErrorCode::grid_too_small, os.str());
  }

  SymbolGrid grid;
  grid.dim = a.dim();
  grid.grid_size = grid_size;
  grid.lipschitz_margin = lipschitz_margin_for(a, grid_size);
  grid.values.assign(grid_count(a.dim(), grid_size), cplx(0.0, 0.0));

  // A sequence supported at the origin has a constant symbol; fill it
  // directly so the trivial cases come out bit-exact.
  WeightedSequence at = a.trimmed();
  if (at.nonzero_count() <= 1 &&
      std::all_of(at.offset().begin(), at.offset().end(),
                  [](long o) { return o == 0; }) &&
      at.max_width() == 1) {
    std::fill(grid.values.begin(), grid.values.end(), at.values()[0]);
    return grid;
  }

  // Zero-embed with indices reduced mod N; the periodic phase handles any
  // offset exactly.
  for (size_t i = 0; i < a.size(); ++i) {
    cplx v = a.values()[i];
    if (v == cplx(0.0, 0.0)) continue;
    std::vector<long> k = a.point_at(i);
    size_t flat = 0;
    for (int j = 0; j < a.dim(); ++j) {
      long m = k[static_cast<size_t>(j)] % grid_size;
      if (m < 0) m += grid_size;
      flat = flat * static_cast<size_t>(grid_size) + static_cast<size_t>(m);
    }
    grid.values[flat] += v;
  }
  std::vector<int> shape(static_cast<size_t>(a.dim()), grid_size);
  fft_nd(grid.values, shape, +1);
  return grid;
}

CertifiedRange certify_range(const SymbolGrid& grid) {
  CertifiedRange r;
  r.grid_min = std::numeric_limits<double>::infinity();
  r.grid_max = 0.0;
  for (const cplx& v : grid.values) {
    double m = std::abs(v);
    r.grid_min = std::min(r.grid_min, m);
    r.grid_max = std::max(r.grid_max, m);
  }
  r.A_certified = std::max(0.0, r.grid_min - grid.lipschitz_margin);
  r.B_certified = r.grid_max + grid.lipschitz_margin;
  return r;
}

DeconvResult deconvolve(const WeightedSequence& a, int grid_size, double trunc_tol) {
  require(trunc_tol > 0.0 && trunc_tol < 1.0, ErrorCode::validation,
          "trunc_tol must lie in (0, 1)");
  WeightedSequence at = a.trimmed();
  int d = at.dim();

  if (at.nonzero_count() == 0)
    fail(ErrorCode::not_invertible, "the zero sequence has no convolutive inverse");

  // Single-point support inverts in closed form: exact values, zero margin.
  if (at.nonzero_count() == 1 && at.size() == 1) {
    cplx c = at.values()[0];
    std::vector<long> neg_k(at.offset());
    for (long& o : neg_k) o = -o;
    DeconvResult res{WeightedSequence(d, neg_k,
                                      std::vector<size_t>(static_cast<size_t>(d), 1),
                                      {cplx(1.0, 0.0) / c}),
                     std::abs(c),
                     std::abs(c),
                     0.0,
                     std::vector<long>(static_cast<size_t>(d), 0),
                     std::abs(cplx(1.0, 0.0) / c),
                     0};
    res.residual_l2 = residual_from_delta(convolve(at, res.b));
    return res;
  }

  SymbolGrid grid = build_symbol(at, grid_size);
  CertifiedRange range = certify_range(grid);
  if (range.A_certified <= 0.0) {
    std::ostringstream os;
    os << "certified lower symbol bound is 0 (grid min " << range.grid_min
       << ", margin " << grid.lipschitz_margin << ")";
    fail(ErrorCode::not_invertible, os.str());
  }

  std::vector<cplx> b_grid = invert_symbol_grid(grid);
  // 1/a^ is not band-limited, so confirm the grid resolves its coefficient
  // decay: doubling must leave ||b||_2 essentially unchanged.
  SymbolGrid grid2 = build_symbol(at, 2 * grid_size);
  std::vector<cplx> b_grid2 = invert_symbol_grid(grid2);
  double l2_n = grid_l2(b_grid);
  double l2_2n = grid_l2(b_grid2);
  if (std::abs(l2_n - l2_2n) > trunc_tol * l2_2n) {
    std::ostringstream os;
    os << "inverse-decay check failed: ||b||_2 moved from " << l2_n << " to "
       << l2_2n << " under grid doubling; increase grid size beyond "
       << grid_size;
    fail(ErrorCode::grid_too_small, os.str());
  }

  // Smallest centered cube [-r, r]^d whose complement carries at most
  // trunc_tol of the l2 mass.
  int n = grid.grid_size;
  int max_rad = n / 2;
  std::vector<double> shell(static_cast<size_t>(max_rad) + 1, 0.0);
  {
    std::vector<long> idx(static_cast<size_t>(d), 0);
    for (size_t flat = 0; flat < b_grid.size(); ++flat) {
      size_t rem = flat;
      long m = 0;
      for (int j = d - 1; j >= 0; --j) {
        long i = static_cast<long>(rem % static_cast<size_t>(n));
        rem /= static_cast<size_t>(n);
        m = std::max(m, std::labs(centered(i, n)));
      }
      shell[static_cast<size_t>(m)] += std::norm(b_grid[flat]);
    }
  }
  double total_sq = 0.0;
  for (double s : shell) total_sq += s;
  double total = std::sqrt(total_sq);
  long radius = max_rad;
  {
    double outside_sq = 0.0;
    for (long r = max_rad; r >= 0; --r) {
      if (r < max_rad) outside_sq += shell[static_cast<size_t>(r) + 1];
      if (std::sqrt(outside_sq) <= trunc_tol * total)
        radius = r;
      else
        break;
    }
  }

  std::vector<long> offset(static_cast<size_t>(d), -radius);
  std::vector<size_t> shape(static_cast<size_t>(d),
                            static_cast<size_t>(2 * radius + 1));
  size_t count = 1;
  for (size_t s : shape) count *= s;
  std::vector<cplx> vals(count, cplx(0.0, 0.0));
  WeightedSequence b(d, offset, shape, std::move(vals));
  for (size_t i = 0; i < b.size(); ++i) {
    std::vector<long> k = b.point_at(i);
    size_t flat = 0;
    for (int j = 0; j < d; ++j) {
      long m = k[static_cast<size_t>(j)] % n;
      if (m < 0) m += n;
      flat = flat * static_cast<size_t>(n) + static_cast<size_t>(m);
    }
    b.mutable_values()[i] = b_grid[flat];
  }

  DeconvResult res{std::move(b),
                   range.A_certified,
                   range.B_certified,
                   0.0,
                   std::vector<long>(static_cast<size_t>(d), radius),
                   total,
                   grid_size};
  res.residual_l2 = residual_from_delta(convolve(at, res.b));
  return res;
}

OpMomentumEstimate momentum_op(const WeightedSequence& a, const MultiIndex& alpha,
                               int grid_size) {
  require(a.dim() == alpha.dim(), ErrorCode::validation,
          "momentum_op multi-index dimension mismatch");
  WeightedSequence w = apply_weight(a, alpha);
  SymbolGrid grid = build_symbol(w, grid_size);
  double gmax = 0.0;
  for (const cplx& v : grid.values) gmax = std::max(gmax, std::abs(v));
  return OpMomentumEstimate{alpha, gmax, gmax + grid.lipschitz_margin};
}

double check_derivative_identity(const SymbolGrid& grid) {
  int d = grid.dim;
  int n = grid.grid_size;
  for (const cplx& v : grid.values)
    require(std::abs(v) > 0.0, ErrorCode::hypothesis_failed,
            "derivative identity needs a nonvanishing symbol on the grid");

  std::vector<cplx> g(grid.values);
  for (cplx& v : g) v = cplx(1.0, 0.0) / v;

  std::vector<size_t> stride(static_cast<size_t>(d), 1);
  for (int j = d - 2; j >= 0; --j)
    stride[static_cast<size_t>(j)] =
        stride[static_cast<size_t>(j) + 1] * static_cast<size_t>(n);

  double defect = 0.0;
  double half_inv_h = static_cast<double>(n) / 2.0;
  for (size_t flat = 0; flat < grid.values.size(); ++flat) {
    for (int j = 0; j < d; ++j) {
      size_t st = stride[static_cast<size_t>(j)];
      long i = static_cast<long>((flat / st) % static_cast<size_t>(n));
      size_t up = flat + st * static_cast<size_t>((i + 1) % n - i);
      size_t dn = flat + st * static_cast<size_t>((i - 1 + n) % n - i);
      cplx fd_g = (g[up] - g[dn]) * half_inv_h;
      cplx fd_f = (grid.values[up] - grid.values[dn]) * half_inv_h;
      cplx f = grid.values[flat];
      defect = std::max(defect, std::abs(fd_g + fd_f / (f * f)));
    }
  }
  return defect;
}

}  // namespace decon
