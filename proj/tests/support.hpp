#pragma once

// Shared fixtures for the unit, property and acceptance tests.

#include <cstddef>
#include <random>
#include <vector>

#include "norden/ambient.hpp"
#include "norden/hypersurface.hpp"
#include "norden/linalg.hpp"
#include "norden/rational.hpp"

namespace norden::testing {

inline Vector vec(std::initializer_list<long> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long x : xs) v(i++) = Rational(x);
  return v;
}

inline Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = static_cast<Index>(rows.begin()->size());
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long x : row) m(i, j++) = Rational(x);
    ++i;
  }
  return m;
}

/// Four-dimensional algebra [X1,X2] = -2X4, [X3,X4] = 2X4, [X1,X4] = 2X2,
/// [X2,X3] = -2X2 (0-based internally).
inline LieAlgebraSpec example_algebra() {
  auto spec = LieAlgebraSpec::abelian(4);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long q) {
    spec.structure_constants(i, j, k) = Rational(q);
    spec.structure_constants(j, i, k) = Rational(-q);
  };
  set(0, 1, 3, -2);
  set(2, 3, 3, 2);
  set(0, 3, 1, 2);
  set(1, 2, 1, -2);
  return spec;
}

/// J X1 = X3, J X2 = X4, J X3 = -X1, J X4 = -X2.
inline Matrix example_J() {
  return mat({{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
}

inline NordenStructure example_norden(long g11 = 1) {
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = Rational(g11);
  g(1, 1) = Rational(1);
  g(2, 2) = Rational(-1);
  g(3, 3) = Rational(-1);
  return NordenStructure::make(g, example_J());
}

inline AmbientGeometry example_ambient() { return build_ambient(example_algebra(), example_norden()); }

/// The same algebra with g~ promoted to the principal metric; its associated
/// metric is -g, so the roles of the two constants swap.
inline AmbientGeometry swapped_ambient() {
  const auto ns = example_norden();
  return build_ambient(example_algebra(), NordenStructure::make(ns.g_assoc, ns.J));
}

inline AmbientGeometry flat_ambient() {
  return build_ambient(LieAlgebraSpec::abelian(4), example_norden());
}

/// span{X2,X3,X4} with g~ and xi = -X3.
inline HypersurfaceSpec example_hypersurface() {
  return HypersurfaceSpec::coordinate(4, {1, 2, 3}, InducingMetric::associated, vec({0, 0, -1, 0}));
}

/// Frame plus second fundamental data with b and rho filled in.
struct Lightlike {
  Classification cls;
  LightlikeFrame frame;
  RadicalTransversal rt;
  SecondFundamental sf;
  UmbilicalResult umb;
};

inline Lightlike build_lightlike(const HypersurfaceSpec& hs, const AmbientGeometry& amb) {
  Lightlike out;
  out.cls = induce_and_classify(hs, amb);
  const auto screen = construct_screen(hs, *out.cls.radical, amb);
  out.frame = construct_transversal(hs, amb, *out.cls.radical, screen);
  out.rt = radical_transversal_check(out.frame, amb.norden);
  out.frame.b = out.rt.b;
  out.sf = gauss_weingarten(out.frame, amb);
  out.umb = umbilical_test(out.sf, out.frame);
  out.sf.rho = out.umb.rho;
  return out;
}

/// Small nonzero-friendly rationals for random instances.
inline Rational small_rational(std::mt19937_64& rng, long lo = -3, long hi = 3) {
  std::uniform_int_distribution<long> num(lo, hi);
  std::uniform_int_distribution<long> den(1, 2);
  return Rational(num(rng)) / Rational(den(rng));
}

inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Matrix m(static_cast<Index>(n), static_cast<Index>(n));
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) m(i, j) = small_rational(rng, -2, 2);
    if (rank(m) == m.rows()) return m;
  }
}

}  // namespace norden::testing

namespace norden::testing {

/// Re-expresses algebra and structure in the basis Y_a = sum_i P(i, a) X_i.
struct Instance {
  LieAlgebraSpec algebra;
  NordenStructure norden;
};

inline Instance conjugate(const LieAlgebraSpec& spec, const NordenStructure& ns, const Matrix& P) {
  const Matrix Pinv = inverse(P);
  const auto d = spec.dim;
  Instance out{LieAlgebraSpec::abelian(d), NordenStructure::make(P.transpose() * ns.g * P, Pinv * ns.J * P)};
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const Vector br = Pinv * spec.bracket(P.col(static_cast<Index>(a)), P.col(static_cast<Index>(b)));
      for (std::size_t c = 0; c < d; ++c) out.algebra.structure_constants(a, b, c) = br(static_cast<Index>(c));
    }
  return out;
}

/// Real semidirect product R x R^{d-1}: [X1, Xi] = sum_j A(i, j) Xj.
inline LieAlgebraSpec random_semidirect(std::mt19937_64& rng, std::size_t d) {
  auto spec = LieAlgebraSpec::abelian(d);
  for (std::size_t i = 1; i < d; ++i)
    for (std::size_t j = 1; j < d; ++j) {
      const Rational q = small_rational(rng, -2, 2);
      spec.structure_constants(0, i, j) = q;
      spec.structure_constants(i, 0, j) = -q;
    }
  return spec;
}

/// J0 = [[0, -I], [I, 0]] and g = [[A, B], [B, -A]] with A, B symmetric.
/// May be degenerate; callers validate.
inline NordenStructure random_norden(std::mt19937_64& rng, std::size_t d) {
  const auto n = static_cast<Index>(d / 2);
  Matrix A(n, n), B(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      A(i, j) = A(j, i) = small_rational(rng, -2, 2);
      B(i, j) = B(j, i) = small_rational(rng, -2, 2);
    }
  Matrix g(2 * n, 2 * n), J = Matrix::Zero(2 * n, 2 * n);
  g << A, B, B, -A;
  J.topRightCorner(n, n) = -Matrix::Identity(n, n);
  J.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return NordenStructure::make(g, J);
}

/// Complex n x n matrix stored as real and imaginary parts.
struct Complex {
  Matrix re, im;
};

/// Realification of a complex Lie algebra with a complex symmetric form B:
/// X_a = e_a, X_{n+a} = i e_a, J = multiplication by i, g = Re B.
/// Such structures are always Kaehler-Norden.
inline Instance realify(std::size_t n, const std::vector<std::vector<std::vector<std::pair<Rational, Rational>>>>& c,
                        const Complex& B) {
  const std::size_t d = 2 * n;
  Instance out{LieAlgebraSpec::abelian(d), {}};
  auto& s = out.algebra.structure_constants;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k) {
        const auto& [re, im] = c[a][b][k];
        s(a, b, k) = re;
        s(a, b, n + k) = im;
        // [e_a, i e_b] = i [e_a, e_b]
        s(a, n + b, k) = -im;
        s(a, n + b, n + k) = re;
        s(n + a, b, k) = -im;
        s(n + a, b, n + k) = re;
        s(n + a, n + b, k) = -re;
        s(n + a, n + b, n + k) = -im;
      }
  const auto m = static_cast<Index>(n);
  Matrix g(2 * m, 2 * m), J = Matrix::Zero(2 * m, 2 * m);
  g << B.re, -B.im, -B.im, -B.re;
  J.bottomLeftCorner(m, m) = Matrix::Identity(m, m);
  J.topRightCorner(m, m) = -Matrix::Identity(m, m);
  out.norden = NordenStructure::make(g, J);
  return out;
}

/// Complex semidirect product C x C^{n-1} with a random complex symmetric form
/// B. The (1,1) entry of B^-1 has zero real part, which makes the ideal
/// spanned by all basis vectors except X1 a lightlike hypersurface; it is
/// radical transversal iff that entry is nonzero.
inline Instance random_complex_kaehler(std::mt19937_64& rng, std::size_t n, bool radical_transversal = true) {
  using Entry = std::pair<Rational, Rational>;
  std::vector<std::vector<std::vector<Entry>>> c(n, std::vector<std::vector<Entry>>(n, std::vector<Entry>(n)));
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) {
      const Entry q{small_rational(rng, -2, 2), small_rational(rng, -2, 2)};
      c[0][i][j] = q;
      c[i][0][j] = {-q.first, -q.second};
    }
  const auto m = static_cast<Index>(n);
  for (;;) {
    Matrix cre(m, m), cim(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = i; j < m; ++j) {
        cre(i, j) = cre(j, i) = small_rational(rng, -2, 2);
        cim(i, j) = cim(j, i) = small_rational(rng, -2, 2);
      }
    cre(0, 0) = Rational(0);
    cim(0, 0) = radical_transversal ? Rational(static_cast<long>(rng() % 3) + 1) : Rational(0);
    // Complex inverse through the real 2n x 2n representation [[re, -im], [im, re]].
    Matrix real(2 * m, 2 * m);
    real << cre, -cim, cim, cre;
    if (rank(real) != 2 * m) continue;
    const Matrix inv = inverse(real);
    Complex B{inv.topLeftCorner(m, m), inv.bottomLeftCorner(m, m)};
    return realify(n, c, B);
  }
}

}  // namespace norden::testing
