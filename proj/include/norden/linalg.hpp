#pragma once

// Exact dense linear algebra over a field scalar. Everything here assumes
// `Scalar(0)` comparisons are exact; no magnitude-based pivoting is done.

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "norden/errors.hpp"
#include "norden/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<norden::Rational> : GenericNumTraits<norden::Rational> {
  using Real = norden::Rational;
  using NonInteger = norden::Rational;
  using Literal = norden::Rational;
  using Nested = norden::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 16
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace norden {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Rational>;
using Vector = VectorX<Rational>;
using Index = Eigen::Index;

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!(m(i, j) == Scalar(0))) return false;
  return true;
}

template <typename Scalar>
struct Echelon {
  MatrixX<Scalar> reduced;    // reduced row echelon form
  std::vector<Index> pivots;  // pivot column of each nonzero row, increasing
};

/// Gauss-Jordan elimination choosing, in each column, the first row at or
/// below the current one with a nonzero entry.
template <typename Derived>
Echelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> out{m, {}};
  auto& a = out.reduced;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index pivot = row;
    while (pivot < a.rows() && a(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const Scalar lead = a(row, col);
    for (Index j = col; j < a.cols(); ++j) a(row, j) /= lead;
    for (Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == Scalar(0)) continue;
      const Scalar factor = a(i, col);
      for (Index j = col; j < a.cols(); ++j) a(i, j) -= factor * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Index>(row_reduce(m).pivots.size());
}

/// Basis of the exact null space, one vector per free column of the reduced
/// form (free entry 1, other free entries 0). Empty iff `m` is injective.
template <typename Derived>
std::vector<VectorX<typename Derived::Scalar>> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<VectorX<Scalar>> basis;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    VectorX<Scalar> v = VectorX<Scalar>::Zero(m.cols());
    v(free) = Scalar(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      v(ech.pivots[r]) = -ech.reduced(static_cast<Index>(r), free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

enum class SolutionKind { unique, parametric, infeasible };

template <typename Scalar>
struct LinearSolution {
  SolutionKind kind = SolutionKind::infeasible;
  VectorX<Scalar> particular;              // empty when infeasible
  std::vector<VectorX<Scalar>> nullspace;  // empty unless parametric

  bool feasible() const { return kind != SolutionKind::infeasible; }
};

/// Classifies and solves a * x = b exactly. The particular solution sets all
/// free variables to zero.
template <typename DerivedA, typename DerivedB>
LinearSolution<typename DerivedA::Scalar> solve_affine(const Eigen::MatrixBase<DerivedA>& a,
                                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (b.cols() != 1 || b.rows() != a.rows()) throw ShapeError("solve_affine: rhs does not match matrix rows");

  MatrixX<Scalar> augmented(a.rows(), a.cols() + 1);
  augmented.leftCols(a.cols()) = a;
  augmented.col(a.cols()) = b;
  const auto ech = row_reduce(augmented);

  LinearSolution<Scalar> out;
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return out;

  out.particular = VectorX<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    out.particular(ech.pivots[r]) = ech.reduced(static_cast<Index>(r), a.cols());
  }
  out.nullspace = kernel_basis(a);
  out.kind = out.nullspace.empty() ? SolutionKind::unique : SolutionKind::parametric;
  return out;
}

/// Exact inverse; throws std::domain_error when `m` is singular.
template <typename Derived>
MatrixX<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
  const Index n = m.rows();
  MatrixX<Scalar> augmented(n, 2 * n);
  augmented.leftCols(n) = m;
  augmented.rightCols(n) = MatrixX<Scalar>::Identity(n, n);
  auto ech = row_reduce(augmented);
  if (static_cast<Index>(ech.pivots.size()) < n || ech.pivots[static_cast<std::size_t>(n - 1)] != n - 1) {
    throw std::domain_error("inverse of a singular matrix");
  }
  return ech.reduced.rightCols(n);
}

struct Inertia {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;
};

/// Sylvester inertia of a symmetric matrix by exact congruence
/// diagonalization.
template <typename Derived>
Inertia inertia(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw ShapeError("inertia of a non-square matrix");
  MatrixX<Scalar> a = m;
  const Index n = a.rows();
  const Scalar zero(0);
  Inertia out;
  for (Index k = 0; k < n; ++k) {
    if (a(k, k) == zero) {
      Index j = k + 1;
      while (j < n && a(j, j) == zero) ++j;
      if (j < n) {
        a.row(k).swap(a.row(j));
        a.col(k).swap(a.col(j));
      } else {
        j = k + 1;
        while (j < n && a(k, j) == zero) ++j;
        if (j == n) {
          ++out.zero;
          continue;
        }
        // a(k,k) becomes 2 a(k,j) != 0
        a.row(k) += a.row(j);
        a.col(k) += a.col(j);
      }
    }
    const Scalar pivot = a(k, k);
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k) == zero) continue;
      const Scalar f = a(i, k) / pivot;
      a.row(i) -= f * a.row(k);
      a.col(i) -= f * a.col(k);
    }
    (pivot > zero ? out.positive : out.negative) += 1;
  }
  return out;
}

/// Integer-primitive representative of the line through `v`: coprime integer
/// coordinates with positive leading nonzero entry.
Vector primitive(const Vector& v);

}  // namespace norden
