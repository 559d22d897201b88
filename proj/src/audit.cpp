#include "norden/audit.hpp"

#include "check_util.hpp"
#include "norden/errors.hpp"

namespace norden {

using detail::ix;

namespace {

std::size_t tensor_dim(const Tensor& t) { return t.dims().at(0); }

// sum_c v_c R13(x, y, c, :)
Vector apply_curvature(const Tensor& R13, std::size_t x, std::size_t y, const Vector& v) {
  const auto m = tensor_dim(R13);
  Vector out = Vector::Zero(ix(m));
  for (std::size_t c = 0; c < m; ++c) {
    if (v(ix(c)).is_zero()) continue;
    for (std::size_t l = 0; l < m; ++l) out(ix(l)) += v(ix(c)) * R13(x, y, c, l);
  }
  return out;
}

Vector column(const Tensor& R13, std::size_t i, std::size_t j, std::size_t k) {
  const auto m = tensor_dim(R13);
  Vector out(ix(m));
  for (std::size_t l = 0; l < m; ++l) out(ix(l)) = R13(i, j, k, l);
  return out;
}

const Rational& require(const std::optional<Rational>& v, const char* what) {
  if (!v) throw HypothesisFailure(std::string("requires ") + what);
  return *v;
}

std::vector<Rational> entries_of(const Vector& v) {
  std::vector<Rational> out;
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

std::string to_string(CurvatureRoute r) { return r == CurvatureRoute::gauss ? "gauss" : "closed_form"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent:
      return "consistent";
    case Verdict::inconsistent:
      return "inconsistent";
    case Verdict::not_applicable:
      break;
  }
  return "not_applicable";
}

Tensor covariant_derivative_curvature(const Tensor& R13, const Tensor& connection) {
  const auto m = tensor_dim(R13);
  Tensor out = Tensor::cube(5, m);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t l = 0; l < m; ++l) {
            Rational acc;
            for (std::size_t p = 0; p < m; ++p) {
              acc += R13(i, j, k, p) * connection(u, p, l);
              acc -= connection(u, i, p) * R13(p, j, k, l);
              acc -= connection(u, j, p) * R13(i, p, k, l);
              acc -= connection(u, k, p) * R13(i, j, p, l);
            }
            out(u, i, j, k, l) = acc;
          }
  return out;
}

Tensor canonical_ricci(const Tensor& R13) {
  const auto m = tensor_dim(R13);
  Tensor out = Tensor::cube(2, m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z) out(x, y) += R13(z, x, y, z);
  return out;
}

Tensor slot_order_ricci(const Tensor& R13) {
  const auto m = tensor_dim(R13);
  Tensor out = Tensor::cube(2, m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z) out(x, y) += R13(x, z, y, z);
  return out;
}

InducedCurvature induced_curvature_gauss(const SecondFundamental& sf, const LightlikeFrame& frame,
                                         const AmbientGeometry& amb) {
  const auto m = frame.tangent_dim();
  const auto& w = sf.induced_gamma;
  auto nabla_B = [&](std::size_t x, std::size_t y, std::size_t z) {
    Rational acc;
    for (std::size_t e = 0; e < m; ++e) {
      acc -= w(x, y, e) * sf.B(ix(e), ix(z));
      acc -= w(x, z, e) * sf.B(ix(y), ix(e));
    }
    return acc;
  };

  InducedCurvature ic;
  ic.route = CurvatureRoute::gauss;
  ic.R13 = Tensor::cube(4, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        const auto parts = frame.split(amb.curvature_vector(frame.span[i], frame.span[j], frame.span[k]));
        const Vector r = parts.tangent - sf.B(ix(i), ix(k)) * sf.A_N.col(ix(j)) + sf.B(ix(j), ix(k)) * sf.A_N.col(ix(i));
        for (std::size_t l = 0; l < m; ++l) ic.R13(i, j, k, l) = r(ix(l));
        const Rational codazzi = nabla_B(i, j, k) - nabla_B(j, i, k) + sf.tau(ix(i)) * sf.B(ix(j), ix(k)) -
                                 sf.tau(ix(j)) * sf.B(ix(i), ix(k));
        if (parts.normal != codazzi) {
          throw InternalInconsistency("Codazzi residual nonzero at (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
        }
      }
  ic.nablaR = covariant_derivative_curvature(ic.R13, sf.induced_gamma);
  ic.ricci = canonical_ricci(ic.R13);
  return ic;
}

GoverningConstants governing_constants(const TrscStatus& trsc, InducingMetric inducing) {
  if (inducing == InducingMetric::principal) return {trsc.nu_tilde, trsc.nu};
  return {trsc.nu, trsc.nu_tilde};
}

Tensor closed_form_table(const LightlikeFrame& frame, const Matrix& J, const Rational& a, const Rational& kappa) {
  const auto m = frame.tangent_dim();
  // J(P s_i) in span coordinates
  std::vector<Vector> jp;
  for (std::size_t i = 0; i < m; ++i) {
    const auto parts = frame.split(J * frame.to_ambient(frame.project_screen(basis_vector(m, i))));
    if (!parts.normal.is_zero()) throw InternalInconsistency("J maps the screen out of the hypersurface");
    jp.push_back(parts.tangent);
  }
  Tensor out = Tensor::cube(4, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        const Vector& z = frame.span[k];
        Vector r = a * (frame.inner(frame.span[i], z) * jp[j] - frame.inner(frame.span[j], z) * jp[i]);
        r(ix(j)) += kappa * frame.inner(frame.span[i], J * z);
        r(ix(i)) -= kappa * frame.inner(frame.span[j], J * z);
        for (std::size_t l = 0; l < m; ++l) out(i, j, k, l) = r(ix(l));
      }
  return out;
}

namespace {

struct Scope {
  Rational kappa, a, b, rho;
};

Scope closed_form_scope(const LightlikeFrame& frame, const SecondFundamental& sf, const AmbientGeometry& amb) {
  const Rational& b = require(frame.b, "a radical transversal frame");
  const Rational& rho = require(sf.rho, "a totally umbilical hypersurface");
  if (!amb.trsc.constant || amb.trsc.degenerate) {
    throw HypothesisFailure("ambient totally real sectional curvatures are not constant");
  }
  const auto gc = governing_constants(amb.trsc, frame.inducing);
  if (!gc.other.is_zero()) {
    throw HypothesisFailure(std::string(frame.inducing == InducingMetric::principal ? "nu" : "nu~") + " = " +
                            gc.other.str() + " should vanish on an umbilical radical transversal hypersurface");
  }
  return Scope{gc.kappa, gc.kappa - rho * rho / b, b, rho};
}

}  // namespace

InducedCurvature induced_curvature_closed_form(const LightlikeFrame& frame, const SecondFundamental& sf,
                                               const AmbientGeometry& amb) {
  const auto s = closed_form_scope(frame, sf, amb);
  InducedCurvature ic;
  ic.route = CurvatureRoute::closed_form;
  ic.R13 = closed_form_table(frame, amb.norden.J, s.a, s.kappa);
  ic.nablaR = covariant_derivative_curvature(ic.R13, sf.induced_gamma);
  ic.ricci = canonical_ricci(ic.R13);
  return ic;
}

Tensor closed_form_ricci(const LightlikeFrame& frame, const Matrix& J, const Rational& a, const Rational& kappa) {
  const auto m = frame.tangent_dim();
  const Rational factor = Rational(-2) * Rational(static_cast<long>(frame.ambient_dim() / 2) - 1) * kappa;
  Tensor out = Tensor::cube(2, m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vector pi = frame.to_ambient(frame.project_screen(basis_vector(m, i)));
    for (std::size_t j = 0; j < m; ++j) {
      const Vector pj = frame.to_ambient(frame.project_screen(basis_vector(m, j)));
      out(i, j) = factor * frame.inner(J * frame.span[i], frame.span[j]) + a * frame.inner(J * pi, pj);
    }
  }
  return out;
}

RicciRoutes induced_ricci(const InducedCurvature& ic, const SecondFundamental& sf, const LightlikeFrame& frame,
                          const AmbientGeometry& amb) {
  const auto m = frame.tangent_dim();
  RicciRoutes out;
  out.canonical = canonical_ricci(ic.R13);
  out.slot_order = slot_order_ricci(ic.R13);
  if (out.slot_order != -out.canonical) throw InternalInconsistency("curvature table is not antisymmetric");

  const Matrix ric_bar = amb.ricci.to_matrix();
  const Rational tr = sf.A_N.trace();
  out.via_ambient = Tensor::cube(2, m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const Vector& X = frame.span[x];
      const Vector& Y = frame.span[y];
      out.via_ambient(x, y) = X.dot(ric_bar * Y) + sf.B(ix(x), ix(y)) * tr -
                              frame.inner(frame.to_ambient(sf.A_N.col(ix(x))), frame.to_ambient(sf.A_star_xi.col(ix(y)))) -
                              frame.inner(amb.curvature_vector(frame.xi, Y, X), frame.N);
    }
  if (out.via_ambient != out.canonical) throw InternalInconsistency("Ricci routes disagree: trace vs ambient expansion");

  if (frame.b && sf.rho && amb.trsc.constant && !amb.trsc.degenerate &&
      governing_constants(amb.trsc, frame.inducing).other.is_zero()) {
    const auto s = closed_form_scope(frame, sf, amb);
    out.closed_form = closed_form_ricci(frame, amb.norden.J, s.a, s.kappa);
    if (*out.closed_form != out.canonical) throw InternalInconsistency("Ricci routes disagree: trace vs closed form");
  }
  out.symmetric = out.canonical.to_matrix() == out.canonical.to_matrix().transpose();
  return out;
}

Vector semi_symmetry_component(const Tensor& R13, std::size_t x, std::size_t y, std::size_t u, std::size_t v,
                               std::size_t w) {
  const auto m = tensor_dim(R13);
  Vector out = apply_curvature(R13, x, y, column(R13, u, v, w)) - apply_curvature(R13, u, v, column(R13, x, y, w));
  const Vector rxu = column(R13, x, y, u);
  const Vector rxv = column(R13, x, y, v);
  for (std::size_t c = 0; c < m; ++c) {
    if (!rxu(ix(c)).is_zero()) out -= rxu(ix(c)) * column(R13, c, v, w);
    if (!rxv(ix(c)).is_zero()) out -= rxv(ix(c)) * column(R13, u, c, w);
  }
  return out;
}

Rational ricci_semi_symmetry_component(const Tensor& R13, const Tensor& ricci, std::size_t x, std::size_t y,
                                       std::size_t a, std::size_t b) {
  const auto m = tensor_dim(R13);
  Rational acc;
  for (std::size_t c = 0; c < m; ++c) {
    acc -= R13(x, y, a, c) * ricci(c, b);
    acc -= R13(x, y, b, c) * ricci(a, c);
  }
  return acc;
}

Vector nabla_curvature_component(const Tensor& nablaR, std::size_t u, std::size_t x, std::size_t y, std::size_t z) {
  const auto m = tensor_dim(nablaR);
  Vector out(ix(m));
  for (std::size_t l = 0; l < m; ++l) out(ix(l)) = nablaR(u, x, y, z, l);
  return out;
}

FlagResult semi_symmetric_check(const Tensor& R13) {
  const auto m = tensor_dim(R13);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < m; ++v)
          for (std::size_t w = 0; w < m; ++w) {
            const Vector val = semi_symmetry_component(R13, x, y, u, v, w);
            if (!is_zero(val)) return FlagResult{false, {x + 1, y + 1, u + 1, v + 1, w + 1}, entries_of(val)};
          }
  return {};
}

FlagResult ricci_semi_symmetric_check(const Tensor& R13, const Tensor& ricci) {
  const auto m = tensor_dim(R13);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          const Rational val = ricci_semi_symmetry_component(R13, ricci, x, y, a, b);
          if (!val.is_zero()) return FlagResult{false, {x + 1, y + 1, a + 1, b + 1}, {val}};
        }
  return {};
}

FlagResult locally_symmetric_check(const Tensor& R13, const Tensor& connection) {
  const Tensor nabla = covariant_derivative_curvature(R13, connection);
  const auto m = tensor_dim(R13);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t z = 0; z < m; ++z) {
          const Vector val = nabla_curvature_component(nabla, u, x, y, z);
          if (!is_zero(val)) return FlagResult{false, {u + 1, x + 1, y + 1, z + 1}, entries_of(val)};
        }
  return {};
}

EinsteinFit almost_einstein_fit(const Tensor& ricci, const Matrix& induced_g, const Matrix& induced_g_assoc) {
  const Vector g = Tensor::from_matrix(induced_g).as_vector();
  const Vector gt = Tensor::from_matrix(induced_g_assoc).as_vector();
  if (g.size() != static_cast<Index>(ricci.size()) || gt.size() != g.size()) {
    throw ShapeError("Ricci and induced metric tables differ in size");
  }
  Matrix a(g.size(), 2);
  a.col(0) = g;
  a.col(1) = gt;
  const auto sol = solve_affine(a, ricci.as_vector());
  EinsteinFit out;
  out.kind = sol.kind;
  if (sol.feasible()) {
    out.k = sol.particular(0);
    out.c = sol.particular(1);
    out.directions = sol.nullspace;
  }
  return out;
}

bool PdeResiduals::vanish() const {
  if (!along_xi.is_zero()) return false;
  for (const auto& r : along_screen)
    if (!r.is_zero()) return false;
  return true;
}

PdeResiduals pde_residuals(const SecondFundamental& sf, const LightlikeFrame& frame, const AmbientGeometry& amb) {
  const auto s = closed_form_scope(frame, sf, amb);
  const auto m = frame.tangent_dim();
  PdeResiduals out;
  out.along_xi = s.b * s.kappa - s.rho * s.rho + s.rho * sf.tau.dot(frame.xi_coords);
  for (std::size_t a = 0; a < m; ++a) {
    out.along_screen.push_back(s.rho * sf.tau.dot(frame.project_screen(basis_vector(m, a))));
  }
  if (!out.vanish()) throw InternalInconsistency("PDE residual nonzero: b kappa - rho^2 = " + out.along_xi.str());
  return out;
}

SymmetryFlags symmetry_flags(const InducedCurvature& ic, const SecondFundamental& sf, const LightlikeFrame& frame,
                             const AmbientGeometry& amb) {
  SymmetryFlags f;
  f.semi_symmetric = semi_symmetric_check(ic.R13);
  f.ricci_semi_symmetric = ricci_semi_symmetric_check(ic.R13, ic.ricci);
  f.locally_symmetric = locally_symmetric_check(ic.R13, sf.induced_gamma);
  f.einstein = almost_einstein_fit(ic.ricci, induced_metric(frame, amb.norden.g), induced_metric(frame, amb.norden.g_assoc));
  return f;
}

AuditVerdict equivalence_audit(const SymmetryFlags& flags, const SecondFundamental& sf, const LightlikeFrame& frame,
                               const AmbientGeometry& amb) {
  const auto s = closed_form_scope(frame, sf, amb);
  AuditVerdict out;
  out.lhs = s.kappa;
  out.rhs = s.rho * s.rho / s.b;
  out.condition_holds = out.lhs == out.rhs;
  if (s.kappa.is_zero()) {
    out.verdict = Verdict::not_applicable;
    out.notes.push_back("governing ambient constant is zero; flags reported without the equivalence");
    return out;
  }
  out.notes.push_back("b and rho are constant on the group, so local symmetry and almost Einstein are included");
  const std::pair<const char*, bool> checks[] = {
      {"semi-symmetric", flags.semi_symmetric.holds},
      {"Ricci semi-symmetric", flags.ricci_semi_symmetric.holds},
      {"locally symmetric", flags.locally_symmetric.holds},
      {"almost Einstein", flags.einstein.feasible()},
  };
  out.verdict = Verdict::consistent;
  for (const auto& [name, holds] : checks) {
    if (holds != out.condition_holds) {
      out.verdict = Verdict::inconsistent;
      out.notes.push_back(std::string(name) + " is " + (holds ? "true" : "false") + " but kappa " +
                          (out.condition_holds ? "=" : "!=") + " rho^2/b");
    }
  }
  return out;
}

}  // namespace norden
