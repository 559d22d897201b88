#pragma once

// Left-invariant geometry of a Lie algebra carrying a Norden structure:
// validation, Levi-Civita connection, curvature, Kaehler test and the
// constant totally real sectional curvature fit.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "norden/linalg.hpp"
#include "norden/rational.hpp"
#include "norden/tensor.hpp"

namespace norden {

Vector basis_vector(std::size_t dim, std::size_t i);

/// "2X1 - (1/2)X3" style rendering; labels default to X1, X2, ...
std::string format_combination(const Vector& v, const std::vector<std::string>& labels = {});

struct LieAlgebraSpec {
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
  Tensor structure_constants;  // c(i, j, k): [X_i, X_j] = sum_k c(i, j, k) X_k

  /// Zero bracket on `dim` generators labelled X1..Xdim.
  static LieAlgebraSpec abelian(std::size_t dim);

  Vector bracket(const Vector& u, const Vector& v) const;
};

struct NordenStructure {
  Matrix g;        // g(i, j) = g(X_i, X_j)
  Matrix J;        // column k holds the coordinates of J X_k
  Matrix g_assoc;  // g~(X, Y) = g(JX, Y), i.e. J^T g

  static NordenStructure make(Matrix g, Matrix J);

  std::size_t dim() const { return static_cast<std::size_t>(g.rows()); }
  Rational metric(const Vector& u, const Vector& v) const { return u.dot(g * v); }
  Rational assoc_metric(const Vector& u, const Vector& v) const { return u.dot(g_assoc * v); }
  Vector apply_J(const Vector& v) const { return J * v; }
};

/// One pass/fail line of a validation or identity report. Witness indices are
/// 1-based.
struct Check {
  std::string name;
  bool passed = true;
  std::vector<std::size_t> witness;
  std::string detail;
};

struct CheckReport {
  std::vector<Check> checks;

  bool passed() const;
  const Check* first_failure() const;
  const Check* find(const std::string& name) const;
};

CheckReport validate_lie_algebra(const LieAlgebraSpec& spec);
CheckReport validate_norden(const NordenStructure& ns);

/// Connection coefficients gamma(i, j, k) with nabla_{X_i} X_j = sum_k gamma(i, j, k) X_k
/// for the left-invariant metric `metric`, from the Koszul formula
/// 2 g(nabla_X Y, Z) = g([X,Y],Z) + g([Z,X],Y) + g([Z,Y],X).
Tensor levi_civita(const LieAlgebraSpec& spec, const Matrix& metric);

/// nabla_u v for constant-coefficient fields.
Vector covariant(const Tensor& gamma, const Vector& u, const Vector& v);

/// F(X_i, X_j, X_k) = g((nabla_{X_i} J) X_j, X_k).
Tensor fundamental_tensor(const Tensor& gamma, const Matrix& g, const Matrix& J);

struct KaehlerReport {
  bool is_kaehler_norden = false;
  Tensor F;    // rank 3, F(i, j, k)
  Tensor Phi;  // rank 3, Phi(X_i, X_j) = sum_k Phi(i, j, k) X_k
};

/// F from `gamma`; Phi as the difference of the Levi-Civita connections of g~
/// and g. Throws InternalInconsistency if exactly one of F, Phi vanishes.
KaehlerReport kaehler_check(const LieAlgebraSpec& spec, const NordenStructure& ns, const Tensor& gamma);

struct Curvature {
  Tensor riemann13;  // R(X_i, X_j) X_k = sum_l riemann13(i, j, k, l) X_l
  Tensor riemann04;  // R(X_i, X_j, X_k, X_l) = g(R(X_i, X_j) X_k, X_l)
};

/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
Curvature curvature(const LieAlgebraSpec& spec, const Tensor& gamma, const Matrix& metric);

struct PiTensors {
  Tensor pi1, pi2, pi3;
};

PiTensors pi_tensors(const Matrix& metric, const Matrix& J);
inline PiTensors pi_tensors(const NordenStructure& ns) { return pi_tensors(ns.g, ns.J); }

/// The g~-counterparts obtained from the relations pi~1 = pi2, pi~2 = pi1,
/// pi~3 = -pi3.
PiTensors associated_pi(const PiTensors& pi);

/// Builds pi~ directly from g~ and compares with associated_pi. Returns the
/// first violating 1-based index tuple, if any.
std::optional<std::vector<std::size_t>> pi_relations_violation(const NordenStructure& ns);

struct TrscStatus {
  bool constant = false;
  Rational nu;
  Rational nu_tilde;
  bool degenerate = false;  // fit was parametric; (nu, nu_tilde) is one representative
  std::string note;
};

/// Exact fit R = nu (pi1 - pi2) + nu~ pi3 over every component.
TrscStatus constant_trsc(const Tensor& riemann04, const PiTensors& pi);

struct AssociatedCurvature {
  Tensor riemann04;  // R~(X, Y, Z, W) = R(X, Y, Z, JW)
  std::optional<TrscStatus> primed;
  bool primed_relation_holds = true;  // nu' = -nu~ and nu~' = nu
};

AssociatedCurvature associated_curvature(const Tensor& riemann04, const NordenStructure& ns,
                                         const TrscStatus& trsc);

/// First 1-based tuple where R(X, Y, JZ, JW) + R(X, Y, Z, W) != 0.
std::optional<std::vector<std::size_t>> kaehler_identity_violation(const Tensor& riemann04, const Matrix& J);

/// First basis or pairwise-sum vector x whose holomorphic section curvature
/// R(x, Jx, Jx, x) is nonzero.
std::optional<std::vector<std::size_t>> holomorphic_curvature_violation(const Tensor& riemann04,
                                                                        const Matrix& J);

/// Ric(X, Y) = trace{Z -> R(Z, X) Y}.
Tensor ambient_ricci(const Tensor& riemann13);

/// -2(n - 1) nu~ g(X, JY), the ambient Ricci tensor predicted when nu = 0.
Tensor ambient_ricci_closed_form(const NordenStructure& ns, const Rational& nu_tilde);

struct AmbientGeometry {
  LieAlgebraSpec algebra;
  NordenStructure norden;
  Tensor gamma;
  Curvature curv;
  PiTensors pi;
  KaehlerReport kaehler;
  TrscStatus trsc;
  AssociatedCurvature associated;
  Tensor ricci;
  std::optional<bool> ricci_closed_form_agrees;  // set only when the fit gives nu = 0
  CheckReport identities;                        // torsion, metric, Bianchi, Kaehler, pi~ ...

  std::size_t dim() const { return algebra.dim; }
  Vector nabla(const Vector& u, const Vector& v) const { return covariant(gamma, u, v); }
  /// R(x, y) z for arbitrary constant-coefficient fields.
  Vector curvature_vector(const Vector& x, const Vector& y, const Vector& z) const;
};

/// Validates, then derives everything above. Throws ValidationFailure when
/// either validation report fails.
AmbientGeometry build_ambient(const LieAlgebraSpec& spec, const NordenStructure& ns);

/// Structural identities of the derived tables: torsion-free, metric
/// compatibility, curvature slot symmetries and first Bianchi identity,
/// Kaehler identities (when F = 0), pi~ relations.
CheckReport ambient_identities(const AmbientGeometry& amb);

}  // namespace norden
