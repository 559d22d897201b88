#include "norden/hypersurface.hpp"

#include <sstream>
#include <stdexcept>

#include "check_util.hpp"
#include "norden/errors.hpp"

namespace norden {

using detail::failed;
using detail::ix;
using detail::one_based;
using detail::passed;

namespace {

Matrix columns(const std::vector<Vector>& vs, std::size_t rows) {
  Matrix m(ix(rows), ix(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(ix(j)) = vs[j];
  return m;
}

Index rank_of(const std::vector<Vector>& vs, std::size_t rows) { return rank(columns(vs, rows)); }

}  // namespace

std::string to_string(InducingMetric m) { return m == InducingMetric::principal ? "principal" : "associated"; }

const Matrix& inducing_form(const NordenStructure& ns, InducingMetric m) {
  return m == InducingMetric::principal ? ns.g : ns.g_assoc;
}

HypersurfaceSpec HypersurfaceSpec::coordinate(std::size_t dim, const std::vector<std::size_t>& indices,
                                              InducingMetric inducing, std::optional<Vector> xi_hint) {
  HypersurfaceSpec hs;
  for (auto i : indices) hs.span.push_back(basis_vector(dim, i));
  hs.inducing = inducing;
  hs.xi_hint = std::move(xi_hint);
  return hs;
}

Classification induce_and_classify(const HypersurfaceSpec& hs, const AmbientGeometry& amb) {
  const auto d = amb.dim();
  if (hs.span.size() + 1 != d) {
    throw ShapeError("hypersurface needs " + std::to_string(d - 1) + " spanning vectors, got " +
                     std::to_string(hs.span.size()));
  }
  for (const auto& v : hs.span)
    if (static_cast<std::size_t>(v.size()) != d) throw ShapeError("spanning vector of wrong length");

  const Matrix S = columns(hs.span, d);
  if (rank(S) != ix(d - 1)) throw HypothesisFailure("spanning vectors are linearly dependent");
  for (std::size_t a = 0; a < hs.span.size(); ++a)
    for (std::size_t b = a + 1; b < hs.span.size(); ++b) {
      Matrix ext(ix(d), ix(d));
      ext.leftCols(ix(d - 1)) = S;
      ext.col(ix(d - 1)) = amb.algebra.bracket(hs.span[a], hs.span[b]);
      if (rank(ext) != ix(d - 1)) {
        throw HypothesisFailure("span is not a subalgebra: bracket of spanning vectors " + std::to_string(a + 1) +
                                " and " + std::to_string(b + 1) + " leaves it");
      }
    }

  Classification out;
  const Matrix& h = inducing_form(amb.norden, hs.inducing);
  out.gram = S.transpose() * h * S;
  const auto kernel = kernel_basis(out.gram);
  if (kernel.size() > 1) {
    throw InternalInconsistency("induced metric has a radical of dimension " + std::to_string(kernel.size()));
  }
  if (kernel.size() == 1) {
    out.lightlike = true;
    out.radical = primitive(S * kernel.front());
  }
  return out;
}

std::vector<Vector> construct_screen(const HypersurfaceSpec& hs, const Vector& radical, const AmbientGeometry& amb) {
  const auto d = amb.dim();
  const Matrix S = columns(hs.span, d);
  const Matrix& h = inducing_form(amb.norden, hs.inducing);

  auto complements_radical = [&](const std::vector<Vector>& cand) {
    if (cand.size() != d - 2) return false;
    std::vector<Vector> all = cand;
    all.push_back(radical);
    if (rank_of(all, d) != ix(d - 1)) return false;
    const Matrix W = columns(cand, d);
    return rank(Matrix(W.transpose() * h * W)) == ix(d - 2);
  };

  // X in TM with JX in TM: the annihilator of TM must vanish on J S a.
  const auto annihilator = kernel_basis(Matrix(S.transpose()));
  if (annihilator.size() == 1) {
    const Matrix row = annihilator.front().transpose() * amb.norden.J * S;
    std::vector<Vector> holomorphic;
    for (const auto& a : kernel_basis(row)) holomorphic.push_back(S * a);
    if (complements_radical(holomorphic)) return holomorphic;
  }

  std::vector<Vector> screen;
  std::vector<Vector> picked{radical};
  for (const auto& v : hs.span) {
    if (screen.size() == d - 2) break;
    picked.push_back(v);
    if (rank_of(picked, d) == ix(picked.size())) {
      screen.push_back(v);
    } else {
      picked.pop_back();
    }
  }
  if (!complements_radical(screen)) throw InternalInconsistency("screen selection did not give a complement");
  return screen;
}

LightlikeFrame::Split LightlikeFrame::split(const Vector& ambient) const {
  const Vector c = ambient_to_split * ambient;
  const auto m = ix(tangent_dim());
  return Split{c.head(m), c(m)};
}

LightlikeFrame::Split LightlikeFrame::adapted(const Vector& span_coords) const {
  const Vector c = adapted_inverse * span_coords;
  const auto m = ix(screen_dim());
  return Split{c.head(m), c(m)};
}

Vector LightlikeFrame::project_screen(const Vector& span_coords) const {
  return span_coords - adapted(span_coords).normal * xi_coords;
}

LightlikeFrame make_frame(InducingMetric inducing, const Matrix& form, const std::vector<Vector>& span,
                          const Vector& xi, const Vector& N, const std::vector<Vector>& screen) {
  LightlikeFrame f;
  f.inducing = inducing;
  f.form = form;
  f.span = span;
  f.xi = xi;
  f.N = N;
  f.screen = screen;
  const auto d = f.ambient_dim();
  const auto m = span.size();
  if (m + 1 != d || screen.size() + 2 != d) throw ShapeError("frame sizes do not match the ambient dimension");

  f.span_matrix = columns(span, d);
  if (f.inner(N, xi) != Rational(1)) throw InternalInconsistency("h(N, xi) != 1");
  if (!f.inner(N, N).is_zero()) throw InternalInconsistency("h(N, N) != 0");
  for (const auto& w : screen)
    if (!f.inner(N, w).is_zero()) throw InternalInconsistency("N is not orthogonal to the screen");

  Matrix E(ix(d), ix(d));
  E.leftCols(ix(m)) = f.span_matrix;
  E.col(ix(m)) = N;
  f.ambient_to_split = inverse(E);

  f.eta = Vector(ix(m));
  for (std::size_t a = 0; a < m; ++a) f.eta(ix(a)) = f.inner(span[a], N);

  auto tangent_coords = [&](const Vector& v, const char* what) {
    const auto s = f.split(v);
    if (!s.normal.is_zero()) throw InternalInconsistency(std::string(what) + " is not tangent");
    return s.tangent;
  };
  f.xi_coords = tangent_coords(xi, "xi");
  f.screen_coords = Matrix(ix(m), ix(screen.size()));
  for (std::size_t s = 0; s < screen.size(); ++s) f.screen_coords.col(ix(s)) = tangent_coords(screen[s], "screen vector");

  Matrix T(ix(m), ix(m));
  T.leftCols(ix(m - 1)) = f.screen_coords;
  T.col(ix(m - 1)) = f.xi_coords;
  f.adapted_inverse = inverse(T);
  return f;
}

LightlikeFrame construct_transversal(const HypersurfaceSpec& hs, const AmbientGeometry& amb, const Vector& radical,
                                     const std::vector<Vector>& screen) {
  const auto d = amb.dim();
  const Matrix& h = inducing_form(amb.norden, hs.inducing);

  Vector xi = radical;
  if (hs.xi_hint) {
    const Vector& hint = *hs.xi_hint;
    if (static_cast<std::size_t>(hint.size()) != d) throw ShapeError("xi hint of wrong length");
    std::vector<Vector> with_hint = hs.span;
    with_hint.push_back(hint);
    bool in_radical = !is_zero(hint) && rank_of(with_hint, d) == ix(d - 1);
    for (const auto& s : hs.span) in_radical = in_radical && hint.dot(h * s).is_zero();
    if (!in_radical) throw HypothesisFailure("xi hint " + format_combination(hint) + " is not in the radical");
    xi = hint;
  }

  // Ambient h-orthogonal complement of the screen is two-dimensional and
  // contains xi; any V in it with h(V, xi) != 0 gives N.
  Matrix rows(ix(screen.size()), ix(d));
  for (std::size_t s = 0; s < screen.size(); ++s) rows.row(ix(s)) = (h * screen[s]).transpose();
  std::optional<Vector> V;
  for (const auto& v : kernel_basis(rows)) {
    if (!v.dot(h * xi).is_zero()) {
      V = v;
      break;
    }
  }
  if (!V) throw InternalInconsistency("no transversal direction pairs with xi");
  const Rational vx = V->dot(h * xi);
  const Rational vv = V->dot(h * *V);
  const Vector N = (*V - (vv / (Rational(2) * vx)) * xi) / vx;
  return make_frame(hs.inducing, h, hs.span, xi, N, screen);
}

RadicalTransversal radical_transversal_check(const LightlikeFrame& frame, const NordenStructure& ns) {
  RadicalTransversal out;
  const auto jxi = frame.split(ns.apply_J(frame.xi));
  if (is_zero(jxi.tangent) && !jxi.normal.is_zero()) {
    out.is_rt = true;
    out.b = jxi.normal;
  }
  out.screen_holomorphic = true;
  for (const auto& w : frame.screen) {
    const auto jw = frame.split(ns.apply_J(w));
    if (!jw.normal.is_zero() || !frame.adapted(jw.tangent).normal.is_zero()) out.screen_holomorphic = false;
  }
  return out;
}

SecondFundamental gauss_weingarten(const LightlikeFrame& frame, const AmbientGeometry& amb) {
  const auto m = frame.tangent_dim();
  const auto ns = frame.screen_dim();
  SecondFundamental sf;
  sf.B = Matrix::Zero(ix(m), ix(m));
  sf.induced_gamma = Tensor::cube(3, m);
  sf.A_star_xi = Matrix::Zero(ix(m), ix(m));
  sf.A_N = Matrix::Zero(ix(m), ix(m));
  sf.tau = Vector::Zero(ix(m));
  sf.C = Matrix::Zero(ix(m), ix(ns));
  sf.screen_gamma = Tensor({m, ns, ns});

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto parts = frame.split(amb.nabla(frame.span[a], frame.span[b]));
      for (std::size_t c = 0; c < m; ++c) sf.induced_gamma(a, b, c) = parts.tangent(ix(c));
      sf.B(ix(a), ix(b)) = parts.normal;
    }
    const auto wein = frame.split(amb.nabla(frame.span[a], frame.N));
    sf.A_N.col(ix(a)) = -wein.tangent;
    sf.tau(ix(a)) = wein.normal;
  }

  // nabla_{s_a} of a tangent field given in span coordinates.
  auto nabla_tangent = [&](std::size_t a, const Vector& coords) {
    Vector out = Vector::Zero(ix(m));
    for (std::size_t b = 0; b < m; ++b) {
      if (coords(ix(b)).is_zero()) continue;
      for (std::size_t c = 0; c < m; ++c) out(ix(c)) += coords(ix(b)) * sf.induced_gamma(a, b, c);
    }
    return out;
  };

  for (std::size_t a = 0; a < m; ++a) {
    const auto xi_parts = frame.adapted(nabla_tangent(a, frame.xi_coords));
    sf.A_star_xi.col(ix(a)) = -(frame.screen_coords * xi_parts.tangent);
    if (xi_parts.normal != -sf.tau(ix(a))) {
      throw InternalInconsistency("tau from nabla xi differs from tau from nabla-bar N at basis vector " +
                                  std::to_string(a + 1));
    }
    for (std::size_t s = 0; s < ns; ++s) {
      const auto parts = frame.adapted(nabla_tangent(a, frame.screen_coords.col(ix(s))));
      sf.C(ix(a), ix(s)) = parts.normal;
      for (std::size_t t = 0; t < ns; ++t) sf.screen_gamma(a, s, t) = parts.tangent(ix(t));
    }
  }
  return sf;
}

UmbilicalResult umbilical_test(const SecondFundamental& sf, const LightlikeFrame& frame) {
  UmbilicalResult out;
  const Matrix gram = frame.span_matrix.transpose() * frame.form * frame.span_matrix;
  const Matrix lhs = Tensor::from_matrix(gram).as_vector();
  const Vector rhs = Tensor::from_matrix(sf.B).as_vector();
  const auto fit = solve_affine(lhs, rhs);
  if (fit.kind == SolutionKind::unique) {
    out.rho = fit.particular(0);
    return out;
  }
  if (fit.kind == SolutionKind::parametric) throw InternalInconsistency("induced metric vanishes identically");

  std::optional<Rational> first_factor;
  std::size_t first_index = 0;
  for (std::size_t s = 0; s < frame.screen_dim(); ++s) {
    const Vector w = frame.screen_coords.col(ix(s));
    const Vector img = sf.A_star_xi * w;
    Matrix pair(img.size(), 2);
    pair.col(0) = w;
    pair.col(1) = img;
    const Vector w_amb = frame.to_ambient(w);
    const Vector img_amb = frame.to_ambient(img);
    if (rank(pair) == 2) {
      out.witness = {s + 1};
      out.witness_vector = w_amb;
      out.witness_image = img_amb;
      out.detail = "A*_xi(" + format_combination(w_amb) + ") = " + format_combination(img_amb) + " is not parallel to " +
                   format_combination(w_amb);
      return out;
    }
    Rational factor;
    for (Index i = 0; i < w.size(); ++i)
      if (!w(i).is_zero()) {
        factor = img(i) / w(i);
        break;
      }
    if (!first_factor) {
      first_factor = factor;
      first_index = s;
    } else if (factor != *first_factor) {
      out.witness = {first_index + 1, s + 1};
      out.witness_vector = w_amb;
      out.witness_image = img_amb;
      out.detail = "A*_xi scales screen vectors " + std::to_string(first_index + 1) + " and " + std::to_string(s + 1) +
                   " by " + first_factor->str() + " and " + factor.str();
      return out;
    }
  }
  throw InternalInconsistency("B is not proportional to h but A*_xi is a multiple of the identity on the screen");
}

CheckReport verify_frame_identities(const SecondFundamental& sf, const LightlikeFrame& frame,
                                    const AmbientGeometry& amb) {
  if (!frame.b) throw HypothesisFailure("frame identities need a radical transversal frame");
  const Rational& b = *frame.b;
  const auto m = frame.tangent_dim();
  const auto ns = frame.screen_dim();
  const auto& J = amb.norden.J;
  auto e = [m](std::size_t a) { return basis_vector(m, a); };
  auto amb_of = [&](const Vector& c) { return frame.to_ambient(c); };
  auto nabla_tangent = [&](std::size_t a, const Vector& coords) {
    Vector out = Vector::Zero(ix(m));
    for (std::size_t bb = 0; bb < m; ++bb)
      for (std::size_t c = 0; c < m; ++c) out(ix(c)) += coords(ix(bb)) * sf.induced_gamma(a, bb, c);
    return out;
  };
  // Screen coordinates of J(P s_a); nullopt when J(P s_a) leaves the screen.
  auto J_screen = [&](const Vector& span_coords) -> std::optional<Vector> {
    const auto parts = frame.split(J * amb_of(frame.project_screen(span_coords)));
    if (!parts.normal.is_zero()) return std::nullopt;
    const auto ad = frame.adapted(parts.tangent);
    if (!ad.normal.is_zero()) return std::nullopt;
    return ad.tangent;
  };

  CheckReport report;
  auto record = [&report](Check c) { report.checks.push_back(std::move(c)); };

  Check sym = passed("B_symmetric");
  Check a_star = passed("A_star_metric");
  Check metric_deriv = passed("induced_metric_derivative");
  Check torsion = passed("induced_torsion_free");
  Check bc = passed("B_C_relation");
  Check bxi = passed("B_radical_zero");
  for (std::size_t a = 0; a < m; ++a) {
    if (bxi.passed && !(sf.B.row(ix(a)).dot(frame.xi_coords)).is_zero())
      bxi = failed("B_radical_zero", one_based({a}), "B(X, xi) != 0");
    for (std::size_t c = 0; c < m; ++c) {
      if (sym.passed && sf.B(ix(a), ix(c)) != sf.B(ix(c), ix(a)))
        sym = failed("B_symmetric", one_based({a, c}), "B(X, Y) != B(Y, X)");
      if (a_star.passed && sf.B(ix(a), ix(c)) != frame.inner(amb_of(sf.A_star_xi.col(ix(a))), frame.span[c]))
        a_star = failed("A_star_metric", one_based({a, c}), "B(X, Y) != h(A*_xi X, Y)");
      if (torsion.passed) {
        Vector t = nabla_tangent(a, e(c)) - nabla_tangent(c, e(a));
        const auto br = frame.split(amb.algebra.bracket(frame.span[a], frame.span[c]));
        if (!br.normal.is_zero() || t != br.tangent)
          torsion = failed("induced_torsion_free", one_based({a, c}), "nabla_X Y - nabla_Y X != [X, Y]");
      }
      if (bc.passed) {
        const auto js = J_screen(e(c));
        if (!js || sf.B(ix(a), ix(c)) != -b * sf.C.row(ix(a)).dot(*js))
          bc = failed("B_C_relation", one_based({a, c}), "B(X, Y) != -b C(X, J PY)");
      }
      for (std::size_t k = 0; k < m && metric_deriv.passed; ++k) {
        const Rational lhs = -frame.inner(amb_of(nabla_tangent(a, e(c))), frame.span[k]) -
                             frame.inner(frame.span[c], amb_of(nabla_tangent(a, e(k))));
        const Rational rhs = sf.B(ix(a), ix(c)) * frame.eta(ix(k)) + sf.B(ix(a), ix(k)) * frame.eta(ix(c));
        if (lhs != rhs)
          metric_deriv = failed("induced_metric_derivative", one_based({a, c, k}),
                                "(nabla_X h)(Y, Z) != B(X, Y) eta(Z) + B(X, Z) eta(Y)");
      }
    }
  }
  record(sym);
  record(bxi);
  record(a_star);
  record(metric_deriv);
  record(torsion);

  Check a_star_screen = passed("A_star_screen_valued");
  Check a_n_screen = passed("A_N_screen_valued");
  Check eta_dec = passed("eta_decomposition");
  Check j_dec = passed("J_decomposition");
  Check shapes = passed("A_star_A_N_relation");
  Check tau = passed("tau_vanishes");
  for (std::size_t a = 0; a < m; ++a) {
    if (a_star_screen.passed && !frame.adapted(sf.A_star_xi.col(ix(a))).normal.is_zero())
      a_star_screen = failed("A_star_screen_valued", one_based({a}), "A*_xi X has a radical component");
    if (a_n_screen.passed && !frame.adapted(sf.A_N.col(ix(a))).normal.is_zero())
      a_n_screen = failed("A_N_screen_valued", one_based({a}), "A_N X has a radical component");
    if (eta_dec.passed && frame.adapted(e(a)).normal != frame.eta(ix(a)))
      eta_dec = failed("eta_decomposition", one_based({a}), "radical component of X != eta(X)");
    if (j_dec.passed && J * frame.span[a] != J * amb_of(frame.project_screen(e(a))) + b * frame.eta(ix(a)) * frame.N)
      j_dec = failed("J_decomposition", one_based({a}), "JX != J(PX) + b eta(X) N");
    if (shapes.passed && amb_of(sf.A_star_xi.col(ix(a))) != -b * (J * amb_of(sf.A_N.col(ix(a)))))
      shapes = failed("A_star_A_N_relation", one_based({a}), "A*_xi X != -b J(A_N X)");
    if (tau.passed && !sf.tau(ix(a)).is_zero()) tau = failed("tau_vanishes", one_based({a}), "tau(X) != 0");
  }
  if (!is_zero(sf.A_star_xi * frame.xi_coords)) record(failed("A_star_xi_radical", {}, "A*_xi xi != 0"));
  else record(passed("A_star_xi_radical"));
  record(a_star_screen);
  record(a_n_screen);
  record(eta_dec);
  record(j_dec);
  record(shapes);
  record(tau);

  Check a_n = passed("A_N_metric");
  Check holo = passed("J_screen_holomorphic");
  Check parallel = passed("screen_connection_J_parallel");
  for (std::size_t s = 0; s < ns; ++s) {
    const Vector w = frame.screen_coords.col(ix(s));
    const auto js = J_screen(w);
    if (!js) {
      if (holo.passed) holo = failed("J_screen_holomorphic", one_based({s}), "J W leaves the screen");
      parallel = failed("screen_connection_J_parallel", one_based({s}), "J W leaves the screen");
    }
    for (std::size_t a = 0; a < m; ++a) {
      if (a_n.passed && sf.C(ix(a), ix(s)) != frame.inner(amb_of(sf.A_N.col(ix(a))), frame.screen[s]))
        a_n = failed("A_N_metric", one_based({a, s}), "C(X, W) != h(A_N X, W)");
      if (!js || !parallel.passed) continue;
      Vector lhs = Vector::Zero(amb.norden.J.rows());
      Vector inner = Vector::Zero(amb.norden.J.rows());
      for (std::size_t t = 0; t < ns; ++t) {
        for (std::size_t u = 0; u < ns; ++u) lhs += (*js)(ix(t)) * sf.screen_gamma(a, t, u) * frame.screen[u];
        inner += sf.screen_gamma(a, s, t) * frame.screen[t];
      }
      if (lhs != J * inner)
        parallel = failed("screen_connection_J_parallel", one_based({a, s}), "nabla*_X (J W) != J nabla*_X W");
    }
  }
  record(a_n);
  record(holo);
  record(parallel);
  record(bc);

  if (sf.rho) {
    const Rational ratio = *sf.rho / b;
    Check shape = passed("A_N_umbilical_form");
    for (std::size_t a = 0; a < m && shape.passed; ++a) {
      const Vector p = frame.project_screen(e(a));
      if (amb_of(sf.A_N * p) != ratio * (J * amb_of(p)))
        shape = failed("A_N_umbilical_form", one_based({a}), "A_N PX != (rho / b) J(PX)");
    }
    record(shape);
  }
  return report;
}

GaugedHypersurface gauge_rescale(const LightlikeFrame& frame, const SecondFundamental& sf, const Rational& c) {
  if (c.is_zero()) throw std::domain_error("gauge factor must be nonzero");
  GaugedHypersurface out;
  out.frame = make_frame(frame.inducing, frame.form, frame.span, c * frame.xi, frame.N / c, frame.screen);
  if (frame.b) out.frame.b = c * c * *frame.b;
  out.sf = sf;
  out.sf.B = c * sf.B;
  out.sf.A_star_xi = c * sf.A_star_xi;
  out.sf.A_N = sf.A_N / c;
  out.sf.C = sf.C / c;
  if (sf.rho) out.sf.rho = c * *sf.rho;
  return out;
}

Matrix induced_metric(const LightlikeFrame& frame, const Matrix& ambient_form) {
  return frame.span_matrix.transpose() * ambient_form * frame.span_matrix;
}

}  // namespace norden
