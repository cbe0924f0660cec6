#include "decon/multi_index.hpp"

#include <algorithm>
#include <sstream>

#include "decon/errors.hpp"

namespace decon {

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
  require(!e_.empty(), ErrorCode::validation, "multi-index must have dim >= 1");
  for (int v : e_)
    require(v >= 0, ErrorCode::validation, "multi-index entries must be >= 0");
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::zeros(int dim) {
  return MultiIndex(std::vector<int>(static_cast<size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  std::vector<int> e(static_cast<size_t>(dim), 0);
  e.at(static_cast<size_t>(axis)) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const {
  int s = 0;
  for (int v : e_) s += v;
  return s;
}

bool MultiIndex::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

bool MultiIndex::leq(const MultiIndex& other) const {
  require(dim() == other.dim(), ErrorCode::validation,
          "multi-index dimension mismatch");
  for (size_t j = 0; j < e_.size(); ++j)
    if (e_[j] > other.e_[j]) return false;
  return true;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  require(dim() == other.dim(), ErrorCode::validation,
          "multi-index dimension mismatch");
  std::vector<int> e(e_);
  for (size_t j = 0; j < e.size(); ++j) e[j] += other.e_[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const {
  require(other.leq(*this), ErrorCode::validation,
          "multi-index subtraction requires beta <= alpha");
  std::vector<int> e(e_);
  for (size_t j = 0; j < e.size(); ++j) e[j] -= other.e_[j];
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t j = 0; j < e_.size(); ++j) {
    if (j) os << ",";
    os << e_[j];
  }
  os << ")";
  return os.str();
}

std::vector<MultiIndex> MultiIndex::lower_set(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<size_t>(alpha.dim()), 0);
  while (true) {
    out.emplace_back(cur);
    int j = alpha.dim() - 1;
    while (j >= 0) {
      if (cur[static_cast<size_t>(j)] < alpha[j]) {
        ++cur[static_cast<size_t>(j)];
        break;
      }
      cur[static_cast<size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a < b;
  });
  return out;
}

namespace {
double binom1(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / i;
  return r;
}
}  // namespace

double binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  require(alpha.dim() == beta.dim(), ErrorCode::validation,
          "multi-index dimension mismatch");
  double r = 1.0;
  for (int j = 0; j < alpha.dim(); ++j) r *= binom1(alpha[j], beta[j]);
  return r;
}

double ipow(double base, int exponent) {
  double r = 1.0;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace decon
