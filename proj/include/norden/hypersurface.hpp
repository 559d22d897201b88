#pragma once

// Lightlike hypersurfaces given by codimension-one subalgebras: radical,
// screen, transversal section, radical transversal test and the
// Gauss-Weingarten data.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "norden/ambient.hpp"
#include "norden/linalg.hpp"
#include "norden/rational.hpp"
#include "norden/tensor.hpp"

namespace norden {

enum class InducingMetric { principal, associated };

std::string to_string(InducingMetric m);

/// The ambient bilinear form that induces the hypersurface metric: g or g~.
const Matrix& inducing_form(const NordenStructure& ns, InducingMetric m);

struct HypersurfaceSpec {
  std::vector<Vector> span;  // 2n - 1 ambient vectors, the hypersurface basis
  InducingMetric inducing = InducingMetric::principal;
  std::optional<Vector> xi_hint;

  /// Span of coordinate vectors X_i for the 0-based `indices`.
  static HypersurfaceSpec coordinate(std::size_t dim, const std::vector<std::size_t>& indices,
                                     InducingMetric inducing, std::optional<Vector> xi_hint = std::nullopt);
};

struct Classification {
  bool lightlike = false;
  Matrix gram;                   // inducing form on the hypersurface basis
  std::optional<Vector> radical;  // ambient coordinates, integer-primitive
};

/// Checks independence and closure under the bracket (HypothesisFailure
/// otherwise), then classifies by the null space of the induced Gram matrix.
Classification induce_and_classify(const HypersurfaceSpec& hs, const AmbientGeometry& amb);

/// Screen basis. Uses the J-invariant part TM cap J(TM) when it complements the
/// radical, otherwise picks input basis vectors greedily (independent of the
/// radical and of earlier picks). Deterministic for a given input order.
std::vector<Vector> construct_screen(const HypersurfaceSpec& hs, const Vector& radical, const AmbientGeometry& amb);

/// Frame adapted to TM + tr(TM). Vectors are ambient coordinates; "span
/// coordinates" are coefficients on the hypersurface basis.
struct LightlikeFrame {
  InducingMetric inducing = InducingMetric::principal;
  Matrix form;                 // h: the inducing bilinear form on the ambient space
  std::vector<Vector> span;    // hypersurface basis
  Matrix span_matrix;          // columns = span
  Vector xi;                   // radical section
  Vector N;                    // transversal section
  std::vector<Vector> screen;  // 2n - 2 vectors
  std::optional<Rational> b;   // J xi = b N, set once the frame is known to be radical transversal
  Vector eta;                  // eta(s_a) = h(s_a, N)

  Matrix ambient_to_split;  // inverse of [span | N]: ambient -> (span coords, N coefficient)
  Vector xi_coords;         // xi in span coordinates
  Matrix screen_coords;     // columns: screen vectors in span coordinates
  Matrix adapted_inverse;   // inverse of [screen_coords | xi_coords]

  std::size_t ambient_dim() const { return static_cast<std::size_t>(form.rows()); }
  std::size_t tangent_dim() const { return span.size(); }
  std::size_t screen_dim() const { return screen.size(); }

  Rational inner(const Vector& u, const Vector& v) const { return u.dot(form * v); }
  Vector to_ambient(const Vector& span_coords) const { return span_matrix * span_coords; }

  struct Split {
    Vector tangent;  // span coordinates
    Rational normal;  // coefficient of N
  };
  Split split(const Vector& ambient) const;

  /// Tangent vector in span coordinates -> (screen coordinates, xi coefficient).
  Split adapted(const Vector& span_coords) const;

  /// P X in span coordinates.
  Vector project_screen(const Vector& span_coords) const;
};

/// Assembles the frame and all derived decomposition matrices. Verifies
/// h(N, xi) = 1, h(N, N) = 0 and h(N, W) = 0 on the screen.
LightlikeFrame make_frame(InducingMetric inducing, const Matrix& form, const std::vector<Vector>& span,
                          const Vector& xi, const Vector& N, const std::vector<Vector>& screen);

/// xi from the hint (which must lie in the radical) or the primitive radical
/// vector; N from a vector V orthogonal to the screen with h(V, xi) != 0 via
/// N = (V - h(V,V)/(2 h(V,xi)) xi) / h(V,xi).
LightlikeFrame construct_transversal(const HypersurfaceSpec& hs, const AmbientGeometry& amb, const Vector& radical,
                                     const std::vector<Vector>& screen);

struct RadicalTransversal {
  bool is_rt = false;
  std::optional<Rational> b;
  bool screen_holomorphic = false;
};

RadicalTransversal radical_transversal_check(const LightlikeFrame& frame, const NordenStructure& ns);

struct SecondFundamental {
  Matrix B;             // B(s_a, s_b)
  Tensor induced_gamma;  // nabla_{s_a} s_b = sum_c induced_gamma(a, b, c) s_c
  Matrix A_star_xi;     // column a: A*_xi s_a in span coordinates
  Matrix A_N;           // column a: A_N s_a in span coordinates
  Vector tau;           // tau(s_a)
  Matrix C;             // C(s_a, w_s) for screen vector w_s
  Tensor screen_gamma;  // nabla*_{s_a} w_s = sum_t screen_gamma(a, s, t) w_t
  std::optional<Rational> rho;
};

/// Decomposes nabla-bar along TM + tr(TM) for every pair of basis fields.
SecondFundamental gauss_weingarten(const LightlikeFrame& frame, const AmbientGeometry& amb);

struct UmbilicalResult {
  std::optional<Rational> rho;
  std::vector<std::size_t> witness;  // 1-based screen indices
  Vector witness_image;              // A*_xi applied to the witness (ambient)
  Vector witness_vector;             // the witness screen vector (ambient)
  std::string detail;
};

/// Exact fit B = rho h on the hypersurface basis. When no rho exists the
/// witness is a screen vector that A*_xi does not scale by a common factor.
UmbilicalResult umbilical_test(const SecondFundamental& sf, const LightlikeFrame& frame);

/// Every structural identity relating B, C, A*_xi, A_N, tau, eta, J and b,
/// evaluated over all basis tuples. Needs frame.b; the umbilical shape of A_N
/// is checked only when sf.rho is set.
CheckReport verify_frame_identities(const SecondFundamental& sf, const LightlikeFrame& frame,
                                    const AmbientGeometry& amb);

struct GaugedHypersurface {
  LightlikeFrame frame;
  SecondFundamental sf;
};

/// xi -> c xi, N -> N / c, b -> c^2 b, rho -> c rho, B -> c B, C -> C / c,
/// A*_xi -> c A*_xi, A_N -> A_N / c. Throws std::domain_error for c = 0.
GaugedHypersurface gauge_rescale(const LightlikeFrame& frame, const SecondFundamental& sf, const Rational& c);

/// Induced metric tables g(s_a, s_b) and g~(s_a, s_b).
Matrix induced_metric(const LightlikeFrame& frame, const Matrix& ambient_form);

}  // namespace norden
