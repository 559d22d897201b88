#include "norden/ambient.hpp"

#include <algorithm>
#include <sstream>

#include "norden/errors.hpp"
#include "check_util.hpp"

namespace norden {

namespace {

using detail::failed;
using detail::one_based;
using detail::passed;

std::vector<std::size_t> one_based(const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> out;
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

// Matrix of nabla_{X_i}: column j holds nabla_{X_i} X_j.
Matrix connection_matrix(const Tensor& gamma, std::size_t i) {
  const auto d = gamma.dims()[0];
  Matrix m(static_cast<Index>(d), static_cast<Index>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) m(static_cast<Index>(k), static_cast<Index>(j)) = gamma(i, j, k);
  return m;
}

}  // namespace

std::string format_combination(const Vector& v, const std::vector<std::string>& labels) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    const Rational& c = v(i);
    if (c.is_zero()) continue;
    const std::string label = static_cast<std::size_t>(i) < labels.size() ? labels[static_cast<std::size_t>(i)]
                                                                           : "X" + std::to_string(i + 1);
    std::string coef;
    if (c == Rational(1)) {
      coef = "";
    } else if (c == Rational(-1)) {
      coef = "-";
    } else if (c.is_integer()) {
      coef = c.str();
    } else {
      coef = "(" + c.str() + ")";
    }
    if (!out.empty()) {
      if (c.sign() < 0) {
        out += " - ";
        if (!coef.empty() && coef.front() == '-') coef.erase(0, 1);
        if (coef.size() > 1 && coef.front() == '(') coef = "(" + abs(c).str() + ")";
      } else {
        out += " + ";
      }
    }
    out += coef + label;
  }
  return out.empty() ? "0" : out;
}

Vector basis_vector(std::size_t dim, std::size_t i) {
  Vector v = Vector::Zero(static_cast<Index>(dim));
  v(static_cast<Index>(i)) = 1;
  return v;
}

LieAlgebraSpec LieAlgebraSpec::abelian(std::size_t dim) {
  LieAlgebraSpec spec;
  spec.dim = dim;
  for (std::size_t i = 0; i < dim; ++i) spec.basis_labels.push_back("X" + std::to_string(i + 1));
  spec.structure_constants = Tensor::cube(3, dim);
  return spec;
}

Vector LieAlgebraSpec::bracket(const Vector& u, const Vector& v) const {
  Vector out = Vector::Zero(static_cast<Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    if (u(static_cast<Index>(i)).is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (v(static_cast<Index>(j)).is_zero()) continue;
      const Rational w = u(static_cast<Index>(i)) * v(static_cast<Index>(j));
      for (std::size_t k = 0; k < dim; ++k) {
        const Rational& c = structure_constants(i, j, k);
        if (!c.is_zero()) out(static_cast<Index>(k)) += w * c;
      }
    }
  }
  return out;
}

NordenStructure NordenStructure::make(Matrix g, Matrix J) {
  NordenStructure ns;
  ns.g = std::move(g);
  ns.J = std::move(J);
  if (ns.g.rows() == ns.J.rows() && ns.g.cols() == ns.J.cols()) ns.g_assoc = ns.J.transpose() * ns.g;
  return ns;
}

bool CheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* CheckReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

const Check* CheckReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

CheckReport validate_lie_algebra(const LieAlgebraSpec& spec) {
  CheckReport report;
  const auto d = spec.dim;
  const auto& c = spec.structure_constants;
  if (c.dims() != std::vector<std::size_t>{d, d, d} || spec.basis_labels.size() != d) {
    report.checks.push_back(failed("shape", {}, "structure constants or labels do not match dim"));
    return report;
  }
  if (d < 4 || d % 2 != 0) {
    report.checks.push_back(failed("dimension", {d}, "dimension must be even and at least 4"));
  } else {
    report.checks.push_back(passed("dimension"));
  }

  Check anti = passed("antisymmetry");
  for (std::size_t i = 0; i < d && anti.passed; ++i)
    for (std::size_t j = 0; j < d && anti.passed; ++j)
      for (std::size_t k = 0; k < d && anti.passed; ++k)
        if (!(c(i, j, k) + c(j, i, k)).is_zero()) {
          anti = failed("antisymmetry", one_based({i, j, k}), "c[i][j][k] != -c[j][i][k]");
        }
  report.checks.push_back(anti);

  Check jacobi = passed("jacobi");
  for (std::size_t i = 0; i < d && jacobi.passed; ++i)
    for (std::size_t j = i + 1; j < d && jacobi.passed; ++j)
      for (std::size_t k = j + 1; k < d && jacobi.passed; ++k) {
        const Vector x = basis_vector(d, i), y = basis_vector(d, j), z = basis_vector(d, k);
        const Vector sum =
            spec.bracket(x, spec.bracket(y, z)) + spec.bracket(y, spec.bracket(z, x)) + spec.bracket(z, spec.bracket(x, y));
        if (!is_zero(sum)) jacobi = failed("jacobi", one_based({i, j, k}), "cyclic sum of brackets is nonzero");
      }
  report.checks.push_back(jacobi);
  return report;
}

CheckReport validate_norden(const NordenStructure& ns) {
  CheckReport report;
  const Index d = ns.g.rows();
  if (ns.g.cols() != d || ns.J.rows() != d || ns.J.cols() != d) {
    report.checks.push_back(failed("shape", {}, "metric and J must be square of equal size"));
    return report;
  }
  auto first_mismatch = [d](const Matrix& a, const Matrix& b) -> std::optional<std::vector<std::size_t>> {
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        if (a(i, j) != b(i, j)) return one_based({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
    return std::nullopt;
  };

  if (auto w = first_mismatch(ns.g, ns.g.transpose())) {
    report.checks.push_back(failed("metric_symmetric", *w, "g(X_i, X_j) != g(X_j, X_i)"));
  } else {
    report.checks.push_back(passed("metric_symmetric"));
  }

  const Matrix minus_identity = -Matrix::Identity(d, d);
  if (auto w = first_mismatch(ns.J * ns.J, minus_identity)) {
    report.checks.push_back(failed("J_squared", *w, "J^2 != -I"));
  } else {
    report.checks.push_back(passed("J_squared"));
  }

  const Matrix jgj = ns.J.transpose() * ns.g * ns.J;
  if (auto w = first_mismatch(jgj, Matrix(-ns.g))) {
    report.checks.push_back(failed("anti_isometry", *w, "g(JX_i, JX_j) != -g(X_i, X_j)"));
  } else {
    report.checks.push_back(passed("anti_isometry"));
  }

  const Index r = rank(ns.g);
  if (r != d) {
    report.checks.push_back(failed("nondegenerate", {}, "metric rank " + std::to_string(r)));
  } else {
    report.checks.push_back(passed("nondegenerate"));
  }

  const bool symmetric = report.find("metric_symmetric")->passed;
  const Inertia in = symmetric ? inertia(ns.g) : Inertia{};
  if (!symmetric || in.positive != d / 2 || in.negative != d / 2) {
    std::ostringstream os;
    os << "signature (" << in.positive << "," << in.negative << "), expected (" << d / 2 << "," << d / 2 << ")";
    report.checks.push_back(failed("signature", {}, os.str()));
  } else {
    report.checks.push_back(passed("signature"));
  }

  if (auto w = first_mismatch(ns.g_assoc, ns.g_assoc.transpose())) {
    report.checks.push_back(failed("assoc_symmetric", *w, "g~ is not symmetric"));
  } else {
    report.checks.push_back(passed("assoc_symmetric"));
  }
  return report;
}

Tensor levi_civita(const LieAlgebraSpec& spec, const Matrix& metric) {
  const auto d = spec.dim;
  const auto& c = spec.structure_constants;
  // lowered(a, b, l) = g([X_a, X_b], X_l)
  Tensor lowered = Tensor::cube(3, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t l = 0; l < d; ++l) {
        Rational acc;
        for (std::size_t k = 0; k < d; ++k)
          if (!c(a, b, k).is_zero()) acc += c(a, b, k) * metric(static_cast<Index>(k), static_cast<Index>(l));
        lowered(a, b, l) = acc;
      }

  const Matrix metric_inv = inverse(metric);
  const Rational half(1, 2);
  Tensor gamma = Tensor::cube(3, d);
  Vector rhs(static_cast<Index>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t l = 0; l < d; ++l) {
        rhs(static_cast<Index>(l)) = half * (lowered(i, j, l) + lowered(l, i, j) + lowered(l, j, i));
      }
      const Vector coeffs = metric_inv * rhs;
      for (std::size_t k = 0; k < d; ++k) gamma(i, j, k) = coeffs(static_cast<Index>(k));
    }
  return gamma;
}

Vector covariant(const Tensor& gamma, const Vector& u, const Vector& v) {
  const auto d = gamma.dims()[0];
  Vector out = Vector::Zero(static_cast<Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (u(static_cast<Index>(i)).is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (v(static_cast<Index>(j)).is_zero()) continue;
      const Rational w = u(static_cast<Index>(i)) * v(static_cast<Index>(j));
      for (std::size_t k = 0; k < d; ++k)
        if (!gamma(i, j, k).is_zero()) out(static_cast<Index>(k)) += w * gamma(i, j, k);
    }
  }
  return out;
}

Tensor fundamental_tensor(const Tensor& gamma, const Matrix& g, const Matrix& J) {
  const auto d = gamma.dims()[0];
  Tensor F = Tensor::cube(3, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Matrix nabla_i = connection_matrix(gamma, i);
    const Matrix dJ = nabla_i * J - J * nabla_i;  // column j: (nabla_{X_i} J) X_j
    const Matrix lowered = dJ.transpose() * g;     // (j, k): g((nabla_i J) X_j, X_k)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) F(i, j, k) = lowered(static_cast<Index>(j), static_cast<Index>(k));
  }
  return F;
}

KaehlerReport kaehler_check(const LieAlgebraSpec& spec, const NordenStructure& ns, const Tensor& gamma) {
  KaehlerReport out;
  out.F = fundamental_tensor(gamma, ns.g, ns.J);
  out.Phi = levi_civita(spec, ns.g_assoc) - gamma;
  out.is_kaehler_norden = out.F.is_zero();
  if (out.is_kaehler_norden != out.Phi.is_zero()) {
    throw InternalInconsistency("F and Phi disagree on the Kaehler-Norden condition");
  }
  return out;
}

Curvature curvature(const LieAlgebraSpec& spec, const Tensor& gamma, const Matrix& metric) {
  const auto d = spec.dim;
  std::vector<Matrix> nabla;
  for (std::size_t i = 0; i < d; ++i) nabla.push_back(connection_matrix(gamma, i));

  Curvature out{Tensor::cube(4, d), Tensor::cube(4, d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix r = nabla[i] * nabla[j] - nabla[j] * nabla[i];
      for (std::size_t p = 0; p < d; ++p) {
        const Rational& c = spec.structure_constants(i, j, p);
        if (!c.is_zero()) r -= c * nabla[p];
      }
      const Matrix lowered = r.transpose() * metric;  // (k, l): g(R(X_i,X_j) X_k, X_l)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          out.riemann13(i, j, k, l) = r(static_cast<Index>(l), static_cast<Index>(k));
          out.riemann04(i, j, k, l) = lowered(static_cast<Index>(k), static_cast<Index>(l));
        }
    }
  return out;
}

PiTensors pi_tensors(const Matrix& metric, const Matrix& J) {
  const auto d = static_cast<std::size_t>(metric.rows());
  const Matrix gJ = metric * J;  // gJ(a, b) = g(X_a, J X_b)
  auto g = [&](std::size_t a, std::size_t b) -> const Rational& {
    return metric(static_cast<Index>(a), static_cast<Index>(b));
  };
  auto h = [&](std::size_t a, std::size_t b) -> const Rational& {
    return gJ(static_cast<Index>(a), static_cast<Index>(b));
  };
  PiTensors pi{Tensor::cube(4, d), Tensor::cube(4, d), Tensor::cube(4, d)};
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w) {
          pi.pi1(x, y, z, w) = g(y, z) * g(x, w) - g(x, z) * g(y, w);
          pi.pi2(x, y, z, w) = h(y, z) * h(x, w) - h(x, z) * h(y, w);
          pi.pi3(x, y, z, w) = -g(y, z) * h(x, w) + g(x, z) * h(y, w) - g(x, w) * h(y, z) + g(y, w) * h(x, z);
        }
  return pi;
}

PiTensors associated_pi(const PiTensors& pi) { return PiTensors{pi.pi2, pi.pi1, -pi.pi3}; }

std::optional<std::vector<std::size_t>> pi_relations_violation(const NordenStructure& ns) {
  const PiTensors direct = pi_tensors(ns.g_assoc, ns.J);
  const PiTensors related = associated_pi(pi_tensors(ns));
  const std::array<std::pair<const Tensor*, const Tensor*>, 3> pairs{
      {{&direct.pi1, &related.pi1}, {&direct.pi2, &related.pi2}, {&direct.pi3, &related.pi3}}};
  for (const auto& [a, b] : pairs) {
    for (std::size_t f = 0; f < a->size(); ++f)
      if (a->entries()[f] != b->entries()[f]) return one_based(a->unflatten(f));
  }
  return std::nullopt;
}

TrscStatus constant_trsc(const Tensor& riemann04, const PiTensors& pi) {
  const auto n = static_cast<Index>(riemann04.size());
  if (pi.pi1.size() != riemann04.size()) throw ShapeError("curvature and pi tensors differ in size");
  Matrix a(n, 2);
  a.col(0) = (pi.pi1 - pi.pi2).as_vector();
  a.col(1) = pi.pi3.as_vector();
  const auto sol = solve_affine(a, riemann04.as_vector());

  TrscStatus out;
  if (!sol.feasible()) {
    out.note = "curvature is not of the form nu (pi1 - pi2) + nu~ pi3";
    return out;
  }
  out.constant = true;
  out.nu = sol.particular(0);
  out.nu_tilde = sol.particular(1);
  if (sol.kind == SolutionKind::parametric) {
    out.degenerate = true;
    out.note = "pi1 - pi2 and pi3 are linearly dependent; reported constants are one representative of a family";
  }
  return out;
}

AssociatedCurvature associated_curvature(const Tensor& riemann04, const NordenStructure& ns,
                                         const TrscStatus& trsc) {
  const auto d = ns.dim();
  AssociatedCurvature out;
  out.riemann04 = Tensor::cube(4, d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w) {
          Rational acc;
          for (std::size_t p = 0; p < d; ++p) {
            const Rational& j = ns.J(static_cast<Index>(p), static_cast<Index>(w));
            if (!j.is_zero()) acc += j * riemann04(x, y, z, p);
          }
          out.riemann04(x, y, z, w) = acc;
        }
  if (trsc.constant) {
    out.primed = constant_trsc(out.riemann04, pi_tensors(ns.g_assoc, ns.J));
    out.primed_relation_holds = out.primed->constant && (trsc.degenerate || out.primed->degenerate ||
                                                         (out.primed->nu == -trsc.nu_tilde && out.primed->nu_tilde == trsc.nu));
  }
  return out;
}

std::optional<std::vector<std::size_t>> kaehler_identity_violation(const Tensor& riemann04, const Matrix& J) {
  const auto d = riemann04.dims()[0];
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w) {
          Rational acc = riemann04(x, y, z, w);
          for (std::size_t p = 0; p < d; ++p) {
            const Rational& jz = J(static_cast<Index>(p), static_cast<Index>(z));
            if (jz.is_zero()) continue;
            for (std::size_t q = 0; q < d; ++q) {
              const Rational& jw = J(static_cast<Index>(q), static_cast<Index>(w));
              if (!jw.is_zero()) acc += jz * jw * riemann04(x, y, p, q);
            }
          }
          if (!acc.is_zero()) return one_based({x, y, z, w});
        }
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> holomorphic_curvature_violation(const Tensor& riemann04,
                                                                        const Matrix& J) {
  const auto d = riemann04.dims()[0];
  auto value = [&](const Vector& x) {
    const Vector jx = J * x;
    Rational acc;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c)
          for (std::size_t e = 0; e < d; ++e) {
            const Rational& r = riemann04(a, b, c, e);
            if (r.is_zero()) continue;
            acc += r * x(static_cast<Index>(a)) * jx(static_cast<Index>(b)) * jx(static_cast<Index>(c)) *
                   x(static_cast<Index>(e));
          }
    return acc;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Vector x = basis_vector(d, i);
      if (j != i) x += basis_vector(d, j);
      if (!value(x).is_zero()) return j == i ? one_based({i}) : one_based({i, j});
    }
  return std::nullopt;
}

Tensor ambient_ricci(const Tensor& riemann13) {
  const auto d = riemann13.dims()[0];
  Tensor ric = Tensor::cube(2, d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      Rational acc;
      for (std::size_t z = 0; z < d; ++z) acc += riemann13(z, x, y, z);
      ric(x, y) = acc;
    }
  return ric;
}

Tensor ambient_ricci_closed_form(const NordenStructure& ns, const Rational& nu_tilde) {
  const auto d = ns.dim();
  const Rational factor = Rational(-2) * Rational(static_cast<long>(d / 2) - 1) * nu_tilde;
  const Matrix gJ = ns.g * ns.J;
  return factor * Tensor::from_matrix(gJ);
}

Vector AmbientGeometry::curvature_vector(const Vector& x, const Vector& y, const Vector& z) const {
  const auto d = dim();
  Vector out = Vector::Zero(static_cast<Index>(d));
  const auto& r = curv.riemann13;
  for (std::size_t i = 0; i < d; ++i) {
    if (x(static_cast<Index>(i)).is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y(static_cast<Index>(j)).is_zero()) continue;
      for (std::size_t k = 0; k < d; ++k) {
        if (z(static_cast<Index>(k)).is_zero()) continue;
        const Rational w = x(static_cast<Index>(i)) * y(static_cast<Index>(j)) * z(static_cast<Index>(k));
        for (std::size_t l = 0; l < d; ++l)
          if (!r(i, j, k, l).is_zero()) out(static_cast<Index>(l)) += w * r(i, j, k, l);
      }
    }
  }
  return out;
}

CheckReport ambient_identities(const AmbientGeometry& amb) {
  CheckReport report;
  const auto d = amb.dim();
  const auto& g = amb.norden.g;
  auto e = [d](std::size_t i) { return basis_vector(d, i); };

  Check torsion = passed("torsion_free");
  for (std::size_t i = 0; i < d && torsion.passed; ++i)
    for (std::size_t j = 0; j < d && torsion.passed; ++j) {
      const Vector t = amb.nabla(e(i), e(j)) - amb.nabla(e(j), e(i)) - amb.algebra.bracket(e(i), e(j));
      if (!is_zero(t)) torsion = failed("torsion_free", one_based({i, j}), "nabla_X Y - nabla_Y X != [X, Y]");
    }
  report.checks.push_back(torsion);

  Check metric = passed("metric_compatible");
  for (std::size_t i = 0; i < d && metric.passed; ++i)
    for (std::size_t j = 0; j < d && metric.passed; ++j)
      for (std::size_t k = 0; k < d && metric.passed; ++k) {
        const Rational v = amb.nabla(e(i), e(j)).dot(g * e(k)) + e(j).dot(g * amb.nabla(e(i), e(k)));
        if (!v.is_zero()) metric = failed("metric_compatible", one_based({i, j, k}), "g(nabla_X Y, Z) + g(Y, nabla_X Z) != 0");
      }
  report.checks.push_back(metric);

  const auto& r = amb.curv.riemann04;
  Check slots = passed("curvature_slot_symmetries");
  Check bianchi = passed("first_bianchi");
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w) {
          const Rational& v = r(x, y, z, w);
          if (slots.passed && (v != -r(y, x, z, w) || v != -r(x, y, w, z) || v != r(z, w, x, y))) {
            slots = failed("curvature_slot_symmetries", one_based({x, y, z, w}),
                           "antisymmetry in (1,2), (3,4) or pair symmetry fails");
          }
          if (bianchi.passed && !(v + r(y, z, x, w) + r(z, x, y, w)).is_zero()) {
            bianchi = failed("first_bianchi", one_based({x, y, z, w}), "cyclic sum over the first three slots != 0");
          }
        }
  report.checks.push_back(slots);
  report.checks.push_back(bianchi);

  if (amb.kaehler.is_kaehler_norden) {
    if (auto w = kaehler_identity_violation(r, amb.norden.J)) {
      report.checks.push_back(failed("kaehler_identities", *w, "R(X, Y, JZ, JW) != -R(X, Y, Z, W)"));
    } else {
      report.checks.push_back(passed("kaehler_identities"));
    }
    if (auto w = holomorphic_curvature_violation(r, amb.norden.J)) {
      report.checks.push_back(failed("holomorphic_curvature_zero", *w, "R(x, Jx, Jx, x) != 0"));
    } else {
      report.checks.push_back(passed("holomorphic_curvature_zero"));
    }
  }

  if (auto w = pi_relations_violation(amb.norden)) {
    report.checks.push_back(failed("pi_tilde_relations", *w, "pi~ built from g~ differs from (pi2, pi1, -pi3)"));
  } else {
    report.checks.push_back(passed("pi_tilde_relations"));
  }

  if (amb.trsc.constant) {
    if (amb.associated.primed_relation_holds) {
      report.checks.push_back(passed("primed_constants"));
    } else {
      report.checks.push_back(failed("primed_constants", {}, "nu' != -nu~ or nu~' != nu"));
    }
  }
  if (amb.ricci_closed_form_agrees) {
    report.checks.push_back(*amb.ricci_closed_form_agrees
                                ? passed("ambient_ricci_closed_form")
                                : failed("ambient_ricci_closed_form", {}, "Ric != -2(n-1) nu~ g(X, JY)"));
  }
  return report;
}

AmbientGeometry build_ambient(const LieAlgebraSpec& spec, const NordenStructure& ns) {
  auto throw_on = [](const CheckReport& rep, const char* what) {
    if (const Check* f = rep.first_failure()) {
      std::ostringstream os;
      os << what << ": " << f->name;
      if (!f->witness.empty()) {
        os << " at (";
        for (std::size_t i = 0; i < f->witness.size(); ++i) os << (i ? "," : "") << f->witness[i];
        os << ")";
      }
      if (!f->detail.empty()) os << ": " << f->detail;
      throw ValidationFailure(os.str());
    }
  };
  throw_on(validate_lie_algebra(spec), "lie algebra");
  if (ns.dim() != spec.dim) throw ValidationFailure("norden structure dimension differs from the algebra");
  throw_on(validate_norden(ns), "norden structure");

  AmbientGeometry amb;
  amb.algebra = spec;
  amb.norden = ns;
  amb.gamma = levi_civita(spec, ns.g);
  amb.kaehler = kaehler_check(spec, ns, amb.gamma);
  amb.curv = curvature(spec, amb.gamma, ns.g);
  amb.pi = pi_tensors(ns);
  amb.trsc = constant_trsc(amb.curv.riemann04, amb.pi);
  amb.associated = associated_curvature(amb.curv.riemann04, ns, amb.trsc);
  amb.ricci = ambient_ricci(amb.curv.riemann13);
  if (amb.trsc.constant && !amb.trsc.degenerate && amb.trsc.nu.is_zero()) {
    amb.ricci_closed_form_agrees = amb.ricci == ambient_ricci_closed_form(ns, amb.trsc.nu_tilde);
  }
  amb.identities = ambient_identities(amb);
  return amb;
}

}  // namespace norden
