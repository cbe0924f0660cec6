#pragma once

#include <string>
#include <vector>

namespace decon {

/// Exponent vector in N_0^d. Indexes both lattice weights k^alpha and
/// derivative orders of symbols on the torus.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zeros(int dim);
  static MultiIndex unit(int dim, int axis);

  int dim() const { return static_cast<int>(e_.size()); }
  int order() const;  // |alpha| = sum of entries
  int operator[](int axis) const { return e_[static_cast<size_t>(axis)]; }
  const std::vector<int>& exponents() const { return e_; }

  bool is_zero() const;
  bool leq(const MultiIndex& other) const;  // coordinatewise partial order

  MultiIndex plus(const MultiIndex& other) const;
  MultiIndex minus(const MultiIndex& other) const;  // requires other <= *this

  bool operator==(const MultiIndex& other) const { return e_ == other.e_; }
  bool operator!=(const MultiIndex& other) const { return e_ != other.e_; }
  // Lexicographic; a total order usable as a map key.
  bool operator<(const MultiIndex& other) const { return e_ < other.e_; }

  std::string to_string() const;

  // All beta <= alpha, sorted by (order, lexicographic). Any linear extension
  // of the partial order works for the recursive bounds; this one is fixed
  // for reproducibility.
  static std::vector<MultiIndex> lower_set(const MultiIndex& alpha);

 private:
  std::vector<int> e_;
};

// Product of per-axis binomial coefficients.
double binomial(const MultiIndex& alpha, const MultiIndex& beta);

// Exact small-integer power with the 0^0 = 1 convention.
double ipow(double base, int exponent);

}  // namespace decon
