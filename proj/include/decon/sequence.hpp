#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "decon/multi_index.hpp"

namespace decon {

using cplx = std::complex<double>;

/// Finitely supported complex sequence on Z^d, stored densely over a box.
/// The entry at row-major array position p lives at lattice point
/// k = offset + p. Instances are immutable in normal use; all operations
/// return new sequences.
class WeightedSequence {
 public:
  WeightedSequence() : WeightedSequence(1, {0}, {1}, {cplx(0.0, 0.0)}) {}
  WeightedSequence(int dim, std::vector<long> offset, std::vector<size_t> shape,
                   std::vector<cplx> values);

  static WeightedSequence delta(int dim);  // Kronecker unit at the origin
  static WeightedSequence zero(int dim);   // canonical all-zero sequence

  int dim() const { return dim_; }
  const std::vector<long>& offset() const { return offset_; }
  const std::vector<size_t>& shape() const { return shape_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& mutable_values() { return values_; }
  size_t size() const { return values_.size(); }

  cplx at(const std::vector<long>& k) const;  // 0 outside the box
  std::vector<long> point_at(size_t flat) const;
  size_t flat_index(const std::vector<long>& k) const;  // must be inside
  bool inside(const std::vector<long>& k) const;

  long width(int axis) const { return static_cast<long>(shape_[static_cast<size_t>(axis)]); }
  long max_width() const;
  size_t nonzero_count() const;

  WeightedSequence trimmed() const;  // drop all-zero boundary slabs
  WeightedSequence conjugated() const;
  WeightedSequence scaled(cplx factor) const;

  double l1() const;
  double l2() const;
  double linf() const;

 private:
  int dim_;
  std::vector<long> offset_;
  std::vector<size_t> shape_;
  std::vector<cplx> values_;
};

enum class NormTag { l1, l2, op };

struct Momentum {
  MultiIndex index;
  NormTag tag;
  double value;
};

// k^alpha * a_k over the same support box; 0^0 = 1 so alpha = 0 is identity.
WeightedSequence apply_weight(const WeightedSequence& a, const MultiIndex& alpha);

// M^alpha_B(a) for B in {l1, l2}. Compensated summation in a fixed
// lexicographic order over the box.
Momentum momentum(const WeightedSequence& a, const MultiIndex& alpha, NormTag tag);

// Exact direct convolution. Output offset is the sum of offsets, output
// support the Minkowski sum of the boxes.
WeightedSequence convolve(const WeightedSequence& a, const WeightedSequence& b);

// || s - delta ||_2 without materializing the difference.
double residual_from_delta(const WeightedSequence& s);

double max_abs_diff(const WeightedSequence& a, const WeightedSequence& b);

}  // namespace decon
