#include "decon/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "decon/errors.hpp"

namespace decon {

namespace {

size_t product(const std::vector<size_t>& shape) {
  size_t n = 1;
  for (size_t s : shape) n *= s;
  return n;
}

// Kahan-compensated accumulator; momenta and norms use it so that results
// are reproducible and accurate over large boxes.
struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

WeightedSequence::WeightedSequence(int dim, std::vector<long> offset,
                                   std::vector<size_t> shape,
                                   std::vector<cplx> values)
    : dim_(dim),
      offset_(std::move(offset)),
      shape_(std::move(shape)),
      values_(std::move(values)) {
  require(dim_ >= 1, ErrorCode::validation, "sequence dim must be >= 1");
  require(offset_.size() == static_cast<size_t>(dim_) &&
              shape_.size() == static_cast<size_t>(dim_),
          ErrorCode::validation, "offset/shape rank mismatch");
  for (size_t s : shape_)
    require(s >= 1, ErrorCode::validation, "sequence shape entries must be >= 1");
  require(values_.size() == product(shape_), ErrorCode::validation,
          "value count does not match shape");
  for (const cplx& v : values_)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            ErrorCode::validation, "sequence values must be finite");
}

WeightedSequence WeightedSequence::delta(int dim) {
  return WeightedSequence(dim, std::vector<long>(static_cast<size_t>(dim), 0),
                          std::vector<size_t>(static_cast<size_t>(dim), 1),
                          {cplx(1.0, 0.0)});
}

WeightedSequence WeightedSequence::zero(int dim) {
  return WeightedSequence(dim, std::vector<long>(static_cast<size_t>(dim), 0),
                          std::vector<size_t>(static_cast<size_t>(dim), 1),
                          {cplx(0.0, 0.0)});
}

bool WeightedSequence::inside(const std::vector<long>& k) const {
  for (int j = 0; j < dim_; ++j) {
    long p = k[static_cast<size_t>(j)] - offset_[static_cast<size_t>(j)];
    if (p < 0 || p >= static_cast<long>(shape_[static_cast<size_t>(j)])) return false;
  }
  return true;
}

size_t WeightedSequence::flat_index(const std::vector<long>& k) const {
  size_t idx = 0;
  for (int j = 0; j < dim_; ++j) {
    long p = k[static_cast<size_t>(j)] - offset_[static_cast<size_t>(j)];
    idx = idx * shape_[static_cast<size_t>(j)] + static_cast<size_t>(p);
  }
  return idx;
}

cplx WeightedSequence::at(const std::vector<long>& k) const {
  require(k.size() == static_cast<size_t>(dim_), ErrorCode::validation,
          "lattice point rank mismatch");
  if (!inside(k)) return cplx(0.0, 0.0);
  return values_[flat_index(k)];
}

std::vector<long> WeightedSequence::point_at(size_t flat) const {
  std::vector<long> k(static_cast<size_t>(dim_));
  for (int j = dim_ - 1; j >= 0; --j) {
    size_t s = shape_[static_cast<size_t>(j)];
    k[static_cast<size_t>(j)] =
        offset_[static_cast<size_t>(j)] + static_cast<long>(flat % s);
    flat /= s;
  }
  return k;
}

long WeightedSequence::max_width() const {
  size_t m = 0;
  for (size_t s : shape_) m = std::max(m, s);
  return static_cast<long>(m);
}

size_t WeightedSequence::nonzero_count() const {
  size_t n = 0;
  for (const cplx& v : values_)
    if (v != cplx(0.0, 0.0)) ++n;
  return n;
}

WeightedSequence WeightedSequence::trimmed() const {
  std::vector<long> lo(static_cast<size_t>(dim_)), hi(static_cast<size_t>(dim_));
  bool any = false;
  for (size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == cplx(0.0, 0.0)) continue;
    std::vector<long> k = point_at(i);
    if (!any) {
      lo = hi = k;
      any = true;
      continue;
    }
    for (size_t j = 0; j < k.size(); ++j) {
      lo[j] = std::min(lo[j], k[j]);
      hi[j] = std::max(hi[j], k[j]);
    }
  }
  if (!any) return zero(dim_);
  std::vector<size_t> shape(static_cast<size_t>(dim_));
  for (size_t j = 0; j < shape.size(); ++j)
    shape[j] = static_cast<size_t>(hi[j] - lo[j] + 1);
  std::vector<cplx> vals(product(shape), cplx(0.0, 0.0));
  WeightedSequence out(dim_, lo, shape, std::move(vals));
  for (size_t i = 0; i < out.size(); ++i) {
    std::vector<long> k = out.point_at(i);
    out.values_[i] = at(k);
  }
  return out;
}

WeightedSequence WeightedSequence::conjugated() const {
  std::vector<cplx> vals(values_);
  for (cplx& v : vals) v = std::conj(v);
  return WeightedSequence(dim_, offset_, shape_, std::move(vals));
}

WeightedSequence WeightedSequence::scaled(cplx factor) const {
  std::vector<cplx> vals(values_);
  for (cplx& v : vals) v *= factor;
  return WeightedSequence(dim_, offset_, shape_, std::move(vals));
}

double WeightedSequence::l1() const {
  Kahan acc;
  for (const cplx& v : values_) acc.add(std::abs(v));
  return acc.sum;
}

double WeightedSequence::l2() const {
  Kahan acc;
  for (const cplx& v : values_) acc.add(std::norm(v));
  return std::sqrt(acc.sum);
}

double WeightedSequence::linf() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

WeightedSequence apply_weight(const WeightedSequence& a, const MultiIndex& alpha) {
  require(a.dim() == alpha.dim(), ErrorCode::validation,
          "weight multi-index dimension does not match sequence");
  std::vector<cplx> vals(a.values());
  for (size_t i = 0; i < vals.size(); ++i) {
    std::vector<long> k = a.point_at(i);
    double w = 1.0;
    for (int j = 0; j < a.dim(); ++j)
      w *= ipow(static_cast<double>(k[static_cast<size_t>(j)]), alpha[j]);
    vals[i] *= w;
  }
  return WeightedSequence(a.dim(), a.offset(), a.shape(), std::move(vals));
}

Momentum momentum(const WeightedSequence& a, const MultiIndex& alpha, NormTag tag) {
  require(tag == NormTag::l1 || tag == NormTag::l2, ErrorCode::validation,
          "momentum() computes l1/l2 momenta; use momentum_op for the op norm");
  WeightedSequence w = apply_weight(a, alpha);
  double value = (tag == NormTag::l1) ? w.l1() : w.l2();
  return Momentum{alpha, tag, value};
}

WeightedSequence convolve(const WeightedSequence& a, const WeightedSequence& b) {
  require(a.dim() == b.dim(), ErrorCode::validation,
          "convolution requires equal dims");
  int d = a.dim();
  std::vector<long> offset(static_cast<size_t>(d));
  std::vector<size_t> shape(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    offset[static_cast<size_t>(j)] =
        a.offset()[static_cast<size_t>(j)] + b.offset()[static_cast<size_t>(j)];
    shape[static_cast<size_t>(j)] =
        a.shape()[static_cast<size_t>(j)] + b.shape()[static_cast<size_t>(j)] - 1;
  }
  std::vector<cplx> vals(product(shape), cplx(0.0, 0.0));
  WeightedSequence out(d, offset, shape, std::move(vals));
  // Fixed iteration order keeps the floating-point result reproducible.
  for (size_t ia = 0; ia < a.size(); ++ia) {
    cplx va = a.values()[ia];
    if (va == cplx(0.0, 0.0)) continue;
    std::vector<long> ka = a.point_at(ia);
    for (size_t ib = 0; ib < b.size(); ++ib) {
      cplx vb = b.values()[ib];
      if (vb == cplx(0.0, 0.0)) continue;
      std::vector<long> k = b.point_at(ib);
      for (int j = 0; j < d; ++j) k[static_cast<size_t>(j)] += ka[static_cast<size_t>(j)];
      out.mutable_values()[out.flat_index(k)] += va * vb;
    }
  }
  return out;
}

double residual_from_delta(const WeightedSequence& s) {
  Kahan acc;
  std::vector<long> origin(static_cast<size_t>(s.dim()), 0);
  bool origin_inside = s.inside(origin);
  for (size_t i = 0; i < s.size(); ++i) {
    cplx v = s.values()[i];
    if (origin_inside && i == s.flat_index(origin)) v -= cplx(1.0, 0.0);
    acc.add(std::norm(v));
  }
  if (!origin_inside) acc.add(1.0);
  return std::sqrt(acc.sum);
}

double max_abs_diff(const WeightedSequence& a, const WeightedSequence& b) {
  // Compare as functions on Z^d, not as storage boxes.
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.at(a.point_at(i))));
  for (size_t i = 0; i < b.size(); ++i)
    m = std::max(m, std::abs(b.values()[i] - a.at(b.point_at(i))));
  return m;
}

}  // namespace decon
