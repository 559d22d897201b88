#pragma once

// Induced curvature and Ricci tensors of a radical transversal lightlike
// hypersurface, the symmetry checkers and the equivalence audit.
//
// All tables here live on the hypersurface basis ("span coordinates").

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "norden/ambient.hpp"
#include "norden/hypersurface.hpp"
#include "norden/linalg.hpp"
#include "norden/tensor.hpp"

namespace norden {

enum class CurvatureRoute { gauss, closed_form };

std::string to_string(CurvatureRoute r);

struct InducedCurvature {
  Tensor R13;     // R(s_i, s_j) s_k = sum_l R13(i, j, k, l) s_l
  Tensor nablaR;  // (nabla_{s_u} R)(s_i, s_j) s_k = sum_l nablaR(u, i, j, k, l) s_l
  Tensor ricci;   // canonical trace, see canonical_ricci
  CurvatureRoute route = CurvatureRoute::gauss;
};

/// (nabla_U R)(X, Y) Z by the Leibniz rule for constant-coefficient fields.
Tensor covariant_derivative_curvature(const Tensor& R13, const Tensor& connection);

/// Ric(X, Y) = trace{Z -> R(Z, X) Y}.
Tensor canonical_ricci(const Tensor& R13);

/// trace{Z -> R(X, Z) Y}; always the negative of canonical_ricci.
Tensor slot_order_ricci(const Tensor& R13);

/// Tangential part of R-bar(X, Y)Z - B(X, Z) A_N Y + B(Y, Z) A_N X. The
/// transversal part is compared with the Codazzi expression
/// (nabla_X B)(Y, Z) - (nabla_Y B)(X, Z) + tau(X) B(Y, Z) - tau(Y) B(X, Z);
/// a mismatch throws InternalInconsistency.
InducedCurvature induced_curvature_gauss(const SecondFundamental& sf, const LightlikeFrame& frame,
                                         const AmbientGeometry& amb);

/// The ambient constant that governs the hypersurface: nu~ for the principal
/// inducing metric, nu for the associated one. `other` is the constant that
/// must vanish.
struct GoverningConstants {
  Rational kappa;
  Rational other;
};

GoverningConstants governing_constants(const TrscStatus& trsc, InducingMetric inducing);

/// R(X, Y)Z = a [h(X, Z) J(PY) - h(Y, Z) J(PX)] + kappa [h(X, JZ) Y - h(Y, JZ) X]
/// on the frame; a and kappa are free so that synthetic tables can be built.
Tensor closed_form_table(const LightlikeFrame& frame, const Matrix& J, const Rational& a, const Rational& kappa);

/// Closed form with kappa from the ambient fit and a = kappa - rho^2 / b.
/// Requires an RT umbilical frame and a constant TRSC ambient whose other
/// constant vanishes; throws HypothesisFailure otherwise.
InducedCurvature induced_curvature_closed_form(const LightlikeFrame& frame, const SecondFundamental& sf,
                                               const AmbientGeometry& amb);

struct RicciRoutes {
  Tensor canonical;    // trace{Z -> R(Z, X) Y}
  Tensor slot_order;   // trace{Z -> R(X, Z) Y} = -canonical
  Tensor via_ambient;  // Ric-bar(X, Y) + B(X, Y) tr A_N - h(A_N X, A*_xi Y) - h(R-bar(xi, Y) X, N)
  std::optional<Tensor> closed_form;  // -2(n - 1) kappa h(JX, Y) + a h(JPX, PY), when the closed form applies
  bool symmetric = false;
};

/// Throws InternalInconsistency when the routes disagree.
RicciRoutes induced_ricci(const InducedCurvature& ic, const SecondFundamental& sf, const LightlikeFrame& frame,
                          const AmbientGeometry& amb);

Tensor closed_form_ricci(const LightlikeFrame& frame, const Matrix& J, const Rational& a, const Rational& kappa);

struct FlagResult {
  bool holds = true;
  std::vector<std::size_t> witness;  // 1-based basis indices
  std::vector<Rational> value;       // nonzero component(s) at the witness
};

/// R(X, Y) R(U, V) W - R(U, V) R(X, Y) W - R(R(X, Y) U, V) W - R(U, R(X, Y) V) W.
Vector semi_symmetry_component(const Tensor& R13, std::size_t x, std::size_t y, std::size_t u, std::size_t v,
                               std::size_t w);

/// -Ric(R(X, Y) A, B) - Ric(A, R(X, Y) B).
Rational ricci_semi_symmetry_component(const Tensor& R13, const Tensor& ricci, std::size_t x, std::size_t y,
                                       std::size_t a, std::size_t b);

Vector nabla_curvature_component(const Tensor& nablaR, std::size_t u, std::size_t x, std::size_t y, std::size_t z);

FlagResult semi_symmetric_check(const Tensor& R13);
FlagResult ricci_semi_symmetric_check(const Tensor& R13, const Tensor& ricci);
FlagResult locally_symmetric_check(const Tensor& R13, const Tensor& connection);

struct EinsteinFit {
  SolutionKind kind = SolutionKind::infeasible;
  Rational k, c;                   // particular solution when feasible
  std::vector<Vector> directions;  // null directions of (k, c) when parametric

  bool feasible() const { return kind != SolutionKind::infeasible; }
};

/// Ric = k g + c g~ on the hypersurface basis, fitted over all index pairs.
EinsteinFit almost_einstein_fit(const Tensor& ricci, const Matrix& induced_g, const Matrix& induced_g_assoc);

struct PdeResiduals {
  Rational along_xi;                 // b kappa - rho^2 + rho tau(xi)
  std::vector<Rational> along_screen;  // rho tau(P s_a) per basis direction
  bool vanish() const;
};

/// Throws InternalInconsistency when a residual is nonzero.
PdeResiduals pde_residuals(const SecondFundamental& sf, const LightlikeFrame& frame, const AmbientGeometry& amb);

struct SymmetryFlags {
  FlagResult semi_symmetric;
  FlagResult ricci_semi_symmetric;
  FlagResult locally_symmetric;
  EinsteinFit einstein;
};

SymmetryFlags symmetry_flags(const InducedCurvature& ic, const SecondFundamental& sf, const LightlikeFrame& frame,
                             const AmbientGeometry& amb);

enum class Verdict { consistent, inconsistent, not_applicable };

std::string to_string(Verdict v);

struct AuditVerdict {
  Rational lhs;  // kappa
  Rational rhs;  // rho^2 / b
  bool condition_holds = false;  // lhs == rhs
  Verdict verdict = Verdict::not_applicable;
  std::vector<std::string> notes;

  bool consistent() const { return verdict != Verdict::inconsistent; }
};

/// Checks that kappa = rho^2 / b holds exactly when each of the four flags
/// holds. Not applicable when kappa = 0.
AuditVerdict equivalence_audit(const SymmetryFlags& flags, const SecondFundamental& sf, const LightlikeFrame& frame,
                               const AmbientGeometry& amb);

}  // namespace norden
