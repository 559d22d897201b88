#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "norden/errors.hpp"
#include "norden/linalg.hpp"
#include "norden/rational.hpp"

namespace norden {

/// Dense component array of arbitrary rank, row-major, 0-based indices.
template <typename Scalar>
class DenseTensor {
 public:
  DenseTensor() = default;

  explicit DenseTensor(std::vector<std::size_t> dims)
      : dims_(std::move(dims)), data_(element_count(dims_), Scalar(0)) {}

  /// Rank-`rank` tensor with every dimension equal to `dim`.
  static DenseTensor cube(std::size_t rank, std::size_t dim) {
    return DenseTensor(std::vector<std::size_t>(rank, dim));
  }

  std::size_t rank() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }

  std::span<const Scalar> entries() const { return data_; }
  std::span<Scalar> entries() { return data_; }

  template <typename... I>
  Scalar& operator()(I... idx) {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }
  template <typename... I>
  const Scalar& operator()(I... idx) const {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  Scalar& at(std::span<const std::size_t> idx) { return data_[offset(idx)]; }
  const Scalar& at(std::span<const std::size_t> idx) const { return data_[offset(idx)]; }

  /// Multi-index of the flat position `flat`.
  std::vector<std::size_t> unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(dims_.size());
    for (std::size_t s = dims_.size(); s-- > 0;) {
      idx[s] = flat % dims_[s];
      flat /= dims_[s];
    }
    return idx;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x == Scalar(0); });
  }

  DenseTensor& operator+=(const DenseTensor& rhs) {
    require_same_dims(rhs);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
  }
  DenseTensor& operator-=(const DenseTensor& rhs) {
    require_same_dims(rhs);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
  }
  DenseTensor& operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator*(const Scalar& s, DenseTensor a) { return a *= s; }
  friend DenseTensor operator-(DenseTensor a) { return a *= Scalar(-1); }

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.dims_ == b.dims_ && a.data_ == b.data_;
  }

  /// Flattened entries as a column vector (used for exact linear fits).
  VectorX<Scalar> as_vector() const {
    VectorX<Scalar> v(static_cast<Index>(data_.size()));
    for (std::size_t i = 0; i < data_.size(); ++i) v(static_cast<Index>(i)) = data_[i];
    return v;
  }

  static DenseTensor from_matrix(const MatrixX<Scalar>& m) {
    DenseTensor t({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
    return t;
  }

  static DenseTensor from_vector(const VectorX<Scalar>& v) {
    DenseTensor t({static_cast<std::size_t>(v.size())});
    for (Index i = 0; i < v.size(); ++i) t(i) = v(i);
    return t;
  }

  MatrixX<Scalar> to_matrix() const {
    if (rank() != 2) throw ShapeError("to_matrix on rank " + std::to_string(rank()));
    MatrixX<Scalar> m(static_cast<Index>(dims_[0]), static_cast<Index>(dims_[1]));
    for (std::size_t i = 0; i < dims_[0]; ++i)
      for (std::size_t j = 0; j < dims_[1]; ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = (*this)(i, j);
    return m;
  }

 private:
  static std::size_t element_count(const std::vector<std::size_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  }

  std::size_t offset(std::span<const std::size_t> idx) const {
    if (idx.size() != dims_.size()) throw ShapeError("index of rank " + std::to_string(idx.size()));
    std::size_t flat = 0;
    for (std::size_t s = 0; s < dims_.size(); ++s) {
      if (idx[s] >= dims_[s]) throw ShapeError("index out of range");
      flat = flat * dims_[s] + idx[s];
    }
    return flat;
  }
  std::size_t offset(std::initializer_list<std::size_t> idx) const {
    return offset(std::span<const std::size_t>(idx.begin(), idx.size()));
  }

  void require_same_dims(const DenseTensor& rhs) const {
    if (dims_ != rhs.dims_) throw ShapeError("elementwise operation on different dims");
  }

  std::vector<std::size_t> dims_;
  std::vector<Scalar> data_;
};

using Tensor = DenseTensor<Rational>;

/// Single-slot contraction sum_k t[.., k, ..] u[.., k, ..]. The result keeps the
/// free slots of `t` in order, followed by the free slots of `u`.
template <typename Scalar>
DenseTensor<Scalar> contract(const DenseTensor<Scalar>& t, std::size_t slot_t, const DenseTensor<Scalar>& u,
                             std::size_t slot_u) {
  if (slot_t >= t.rank() || slot_u >= u.rank()) throw ShapeError("contraction slot out of range");
  const std::size_t n = t.dims()[slot_t];
  if (n != u.dims()[slot_u]) throw ShapeError("contracted dims differ");

  std::vector<std::size_t> dims;
  for (std::size_t s = 0; s < t.rank(); ++s)
    if (s != slot_t) dims.push_back(t.dims()[s]);
  for (std::size_t s = 0; s < u.rank(); ++s)
    if (s != slot_u) dims.push_back(u.dims()[s]);
  DenseTensor<Scalar> out(dims);

  std::vector<std::size_t> ti(t.rank()), ui(u.rank());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto oi = out.unflatten(flat);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < t.rank(); ++s)
      if (s != slot_t) ti[s] = oi[pos++];
    for (std::size_t s = 0; s < u.rank(); ++s)
      if (s != slot_u) ui[s] = oi[pos++];
    Scalar acc(0);
    for (std::size_t k = 0; k < n; ++k) {
      ti[slot_t] = k;
      ui[slot_u] = k;
      const Scalar& a = t.at(ti);
      if (a == Scalar(0)) continue;
      acc += a * u.at(ui);
    }
    out.entries()[flat] = acc;
  }
  return out;
}

}  // namespace norden
