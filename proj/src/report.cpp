#include "norden/report.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include <json.hpp>

#include "check_util.hpp"
#include "norden/errors.hpp"

#ifndef NORDEN_VERSION
#define NORDEN_VERSION "0.0.0"
#endif

namespace norden {

using detail::ix;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kRicciConvention =
    "Ric(X,Y) = trace{Z -> R(Z,X)Y}; the slot order trace{Z -> R(X,Z)Y} gives the negative table "
    "(reported as ricci.slot_order); vanishing checks and the almost Einstein fit are unaffected by the sign";

std::string summarize(const Check& c) {
  std::ostringstream os;
  os << c.name;
  if (!c.witness.empty()) {
    os << " at (";
    for (std::size_t i = 0; i < c.witness.size(); ++i) os << (i ? "," : "") << c.witness[i];
    os << ")";
  }
  if (!c.detail.empty()) os << ": " << c.detail;
  return os.str();
}

void raise(HypersurfaceReport& hr, ExitCode code, std::string status, std::string message) {
  if (static_cast<int>(code) >= static_cast<int>(hr.severity)) {
    hr.severity = code;
    hr.status = std::move(status);
  }
  hr.messages.push_back(std::move(message));
}

void audit_stage(HypersurfaceReport& hr, const AmbientGeometry& amb) {
  const auto& frame = *hr.frame;
  const auto& sf = *hr.sf;
  try {
    const auto closed = induced_curvature_closed_form(frame, sf, amb);
    hr.closed_form_matches = closed.R13 == hr.curvature->R13;
    if (!*hr.closed_form_matches) {
      raise(hr, ExitCode::internal_inconsistency, "internal_inconsistency",
            "closed-form curvature differs from the Gauss route");
      return;
    }
    hr.pde = pde_residuals(sf, frame, amb);
    hr.audit = equivalence_audit(*hr.flags, sf, frame, amb);
    if (hr.audit->verdict == Verdict::inconsistent) {
      raise(hr, ExitCode::internal_inconsistency, "inconsistent", "equivalence audit failed");
    }
  } catch (const HypothesisFailure& e) {
    raise(hr, ExitCode::hypothesis_failure, "audit_refused", std::string("audit skipped: ") + e.what());
  }
}

void hypersurface_stage(HypersurfaceReport& hr, const HypersurfaceSpec& hs, const AmbientGeometry& amb) {
  hr.classification = induce_and_classify(hs, amb);
  if (!hr.classification->lightlike) {
    const auto d = amb.dim();
    Matrix S(ix(d), ix(hs.span.size()));
    for (std::size_t a = 0; a < hs.span.size(); ++a) S.col(ix(a)) = hs.span[a];
    const auto omega = kernel_basis(Matrix(S.transpose()));
    hr.normal = primitive(Vector(inverse(inducing_form(amb.norden, hs.inducing)) * omega.front()));
    raise(hr, ExitCode::hypothesis_failure, "nondegenerate",
          "induced metric is nondegenerate; the normal is reported without unit normalization");
    return;
  }
  const auto screen = construct_screen(hs, *hr.classification->radical, amb);
  hr.frame = construct_transversal(hs, amb, *hr.classification->radical, screen);
  hr.rt = radical_transversal_check(*hr.frame, amb.norden);
  hr.frame->b = hr.rt->b;
  if (!hr.rt->is_rt) {
    raise(hr, ExitCode::hypothesis_failure, "not_radical_transversal", "J xi is not a multiple of N");
    return;
  }
  hr.sf = gauss_weingarten(*hr.frame, amb);
  hr.umbilical = umbilical_test(*hr.sf, *hr.frame);
  hr.sf->rho = hr.umbilical->rho;
  hr.identities = verify_frame_identities(*hr.sf, *hr.frame, amb);
  if (const Check* f = hr.identities->first_failure()) {
    raise(hr, ExitCode::internal_inconsistency, "internal_inconsistency", "frame identity failed: " + summarize(*f));
    return;
  }
  hr.curvature = induced_curvature_gauss(*hr.sf, *hr.frame, amb);
  hr.ricci = induced_ricci(*hr.curvature, *hr.sf, *hr.frame, amb);
  hr.flags = symmetry_flags(*hr.curvature, *hr.sf, *hr.frame, amb);
  if (!hr.umbilical->rho) {
    raise(hr, ExitCode::hypothesis_failure, "not_umbilical", "not totally umbilical: " + hr.umbilical->detail);
    hr.messages.push_back("audit skipped");
    return;
  }
  audit_stage(hr, amb);
}

// ---- structured output

Json rat(const Rational& r) { return r.str(); }

Json vec(const Vector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i).str());
  return a;
}

Json mat(const Matrix& m) {
  Json a = Json::array();
  for (Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

Json nonzeros(const Tensor& t) {
  Json a = Json::array();
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t.entries()[f].is_zero()) continue;
    Json idx = Json::array();
    for (auto i : t.unflatten(f)) idx.push_back(i + 1);
    a.push_back(Json{{"index", idx}, {"value", t.entries()[f].str()}});
  }
  return a;
}

Json checks(const CheckReport& rep) {
  Json a = Json::array();
  for (const auto& c : rep.checks) {
    a.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}, {"detail", c.detail}});
  }
  return a;
}

Json trsc_json(const TrscStatus& t) {
  return Json{{"constant", t.constant},
              {"nu", t.constant ? rat(t.nu) : Json()},
              {"nu_tilde", t.constant ? rat(t.nu_tilde) : Json()},
              {"degenerate", t.degenerate},
              {"note", t.note}};
}

Json flag_json(const FlagResult& f) {
  Json value = Json::array();
  for (const auto& v : f.value) value.push_back(v.str());
  return Json{{"holds", f.holds}, {"witness", f.witness}, {"value", value}};
}

std::string kind_name(SolutionKind k) {
  switch (k) {
    case SolutionKind::unique:
      return "unique";
    case SolutionKind::parametric:
      return "parametric";
    case SolutionKind::infeasible:
      break;
  }
  return "infeasible";
}

Json einstein_json(const EinsteinFit& e) {
  Json dirs = Json::array();
  for (const auto& d : e.directions) dirs.push_back(vec(d));
  return Json{{"kind", kind_name(e.kind)},
              {"k", e.feasible() ? rat(e.k) : Json()},
              {"c", e.feasible() ? rat(e.c) : Json()},
              {"directions", dirs}};
}

template <typename T, typename F>
Json opt(const std::optional<T>& v, F f) {
  return v ? f(*v) : Json();
}

Json hypersurface_json(const HypersurfaceReport& hr, const std::vector<std::string>& labels) {
  Json span = Json::array();
  for (auto i : hr.block.span) span.push_back(labels[i - 1]);
  Json j;
  j["span"] = span;
  j["inducing_metric"] = to_string(hr.block.inducing);
  j["status"] = hr.status;
  j["exit_class"] = static_cast<int>(hr.severity);
  j["messages"] = hr.messages;
  j["classification"] = opt(hr.classification, [&](const Classification& c) {
    return Json{{"lightlike", c.lightlike}, {"gram", mat(c.gram)}, {"radical", opt(c.radical, vec)},
                {"normal", opt(hr.normal, vec)}};
  });
  j["frame"] = opt(hr.frame, [&](const LightlikeFrame& f) {
    Json screen = Json::array();
    for (const auto& w : f.screen) screen.push_back(vec(w));
    return Json{{"xi", vec(f.xi)},
                {"N", vec(f.N)},
                {"screen", screen},
                {"eta", vec(f.eta)},
                {"radical_transversal", hr.rt->is_rt},
                {"b", opt(f.b, rat)},
                {"screen_holomorphic", hr.rt->screen_holomorphic}};
  });
  j["second_fundamental"] = opt(hr.sf, [&](const SecondFundamental& sf) {
    const auto& u = *hr.umbilical;
    Json witness;
    if (!u.rho) {
      witness = Json{{"screen_indices", u.witness}, {"vector", vec(u.witness_vector)},
                     {"image", vec(u.witness_image)}, {"detail", u.detail}};
    }
    return Json{{"B", mat(sf.B)},     {"C", mat(sf.C)},   {"A_star_xi", mat(sf.A_star_xi)},
                {"A_N", mat(sf.A_N)}, {"tau", vec(sf.tau)}, {"totally_umbilical", u.rho.has_value()},
                {"rho", opt(u.rho, rat)}, {"umbilical_witness", witness}};
  });
  j["frame_identities"] = opt(hr.identities, checks);
  j["curvature"] = opt(hr.curvature, [&](const InducedCurvature& c) {
    return Json{{"route", to_string(c.route)},
                {"nonzero", nonzeros(c.R13)},
                {"closed_form_matches", hr.closed_form_matches ? Json(*hr.closed_form_matches) : Json()}};
  });
  j["ricci"] = opt(hr.ricci, [&](const RicciRoutes& r) {
    return Json{{"convention", kRicciConvention},
                {"canonical", mat(r.canonical.to_matrix())},
                {"slot_order", mat(r.slot_order.to_matrix())},
                {"ambient_expansion_matches", r.via_ambient == r.canonical},
                {"closed_form_matches", r.closed_form ? Json(*r.closed_form == r.canonical) : Json()},
                {"symmetric", r.symmetric}};
  });
  j["flags"] = opt(hr.flags, [](const SymmetryFlags& f) {
    return Json{{"locally_symmetric", flag_json(f.locally_symmetric)},
                {"semi_symmetric", flag_json(f.semi_symmetric)},
                {"ricci_semi_symmetric", flag_json(f.ricci_semi_symmetric)},
                {"almost_einstein", einstein_json(f.einstein)}};
  });
  j["pde_residuals"] = opt(hr.pde, [](const PdeResiduals& p) {
    Json s = Json::array();
    for (const auto& r : p.along_screen) s.push_back(r.str());
    return Json{{"along_xi", p.along_xi.str()}, {"along_screen", s}};
  });
  j["audit"] = opt(hr.audit, [](const AuditVerdict& a) {
    return Json{{"condition_iii", Json{{"lhs", a.lhs.str()}, {"rhs", a.rhs.str()}}},
                {"condition_holds", a.condition_holds},
                {"verdict", to_string(a.verdict)},
                {"notes", a.notes}};
  });
  return j;
}

std::string emit_structured(const Report& r) {
  Json doc;
  doc["engine"] = Json{{"name", "norden"}, {"version", r.version}};
  doc["input_sha256"] = r.input_digest;
  doc["validation"] = Json{{"passed", !r.validation_error}, {"error", r.validation_error ? Json(*r.validation_error) : Json()},
                           {"checks", checks(r.validation)}};
  doc["ambient"] = opt(r.ambient, [&](const AmbientGeometry& a) {
    return Json{{"dim", a.dim()},
                {"basis", r.labels},
                {"connection", nonzeros(a.gamma)},
                {"curvature", nonzeros(a.curv.riemann04)},
                {"kaehler", Json{{"is_kaehler_norden", a.kaehler.is_kaehler_norden}, {"F", nonzeros(a.kaehler.F)}}},
                {"trsc", trsc_json(a.trsc)},
                {"primed", opt(a.associated.primed, trsc_json)},
                {"ricci", mat(a.ricci.to_matrix())},
                {"ricci_closed_form_agrees",
                 a.ricci_closed_form_agrees ? Json(*a.ricci_closed_form_agrees) : Json()},
                {"identities", checks(a.identities)}};
  });
  Json hs = Json::array();
  for (const auto& h : r.hypersurfaces) hs.push_back(hypersurface_json(h, r.labels));
  doc["hypersurfaces"] = hs;
  doc["exit_code"] = static_cast<int>(r.exit_code());
  return doc.dump(2) + "\n";
}

// ---- text output

std::string join_vectors(const std::vector<Vector>& vs, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + format_combination(vs[i], labels);
  return out;
}

std::string matrix_text(const Matrix& m) {
  std::string out = "[";
  for (Index i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (Index j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + m(i, j).str();
    out += "]";
  }
  return out + "]";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string flag_text(const FlagResult& f) {
  if (f.holds) return "true";
  std::string out = "false, witness (";
  for (std::size_t i = 0; i < f.witness.size(); ++i) out += (i ? "," : "") + std::to_string(f.witness[i]);
  return out + ")";
}

void checks_text(std::ostream& os, const char* title, const CheckReport& rep) {
  if (const Check* f = rep.first_failure()) {
    os << title << ": FAILED " << summarize(*f) << "\n";
  } else {
    os << title << ": all " << rep.checks.size() << " passed\n";
  }
}

void hypersurface_text(std::ostream& os, const HypersurfaceReport& hr, std::size_t n,
                       const std::vector<std::string>& labels) {
  os << "\n== hypersurface " << n << ": span";
  for (auto i : hr.block.span) os << ' ' << labels[i - 1];
  os << ", metric " << to_string(hr.block.inducing) << " ==\n";
  if (hr.classification) {
    if (hr.classification->lightlike) {
      os << "lightlike, radical spanned by " << format_combination(*hr.classification->radical, labels) << "\n";
    } else {
      os << "nondegenerate, normal " << format_combination(*hr.normal, labels) << " (not unit-normalized)\n";
    }
  }
  if (hr.frame) {
    const auto& f = *hr.frame;
    os << "xi = " << format_combination(f.xi, labels) << "\n";
    os << "N = " << format_combination(f.N, labels) << "\n";
    os << "screen: " << join_vectors(f.screen, labels) << "\n";
    os << "screen holomorphic: " << yes_no(hr.rt->screen_holomorphic) << "\n";
    if (hr.rt->is_rt) {
      os << "radical transversal: b = " << hr.rt->b->str() << "\n";
    } else {
      os << "radical transversal: no\n";
    }
  }
  if (hr.sf) {
    os << "B = " << matrix_text(hr.sf->B) << "\n";
    os << "tau = " << matrix_text(hr.sf->tau.transpose()) << "\n";
    if (hr.umbilical->rho) {
      os << "totally umbilical: rho = " << hr.umbilical->rho->str() << "\n";
    } else {
      os << "not totally umbilical: " << hr.umbilical->detail << "\n";
    }
  }
  if (hr.identities) checks_text(os, "frame identities", *hr.identities);
  if (hr.curvature) {
    os << "induced curvature: gauss route";
    if (hr.closed_form_matches) os << (*hr.closed_form_matches ? ", closed form matches" : ", closed form DIFFERS");
    os << "\n";
  }
  if (hr.ricci) {
    os << "ricci (trace Z -> R(Z,X)Y) = " << matrix_text(hr.ricci->canonical.to_matrix()) << "\n";
    os << "ricci (trace Z -> R(X,Z)Y) = " << matrix_text(hr.ricci->slot_order.to_matrix()) << "\n";
    os << "note: " << kRicciConvention << "\n";
  }
  if (hr.flags) {
    const auto& fl = *hr.flags;
    os << "locally symmetric: " << flag_text(fl.locally_symmetric) << "\n";
    os << "semi-symmetric: " << flag_text(fl.semi_symmetric) << "\n";
    os << "ricci semi-symmetric: " << flag_text(fl.ricci_semi_symmetric) << "\n";
    os << "almost einstein: ";
    if (fl.einstein.kind == SolutionKind::infeasible) {
      os << "no\n";
    } else {
      os << "k = " << fl.einstein.k.str() << ", c = " << fl.einstein.c.str();
      if (fl.einstein.kind == SolutionKind::parametric) os << " (one of a family)";
      os << "\n";
    }
  }
  if (hr.pde) os << "pde residuals: " << (hr.pde->vanish() ? "all zero" : "NONZERO") << "\n";
  if (hr.audit) {
    const auto& a = *hr.audit;
    os << "condition: kappa = " << a.lhs.str() << ", rho^2/b = " << a.rhs.str() << (a.condition_holds ? " (holds)" : " (fails)")
       << "\n";
    os << "audit: " << to_string(a.verdict) << "\n";
    for (const auto& note : a.notes) os << "  " << note << "\n";
  }
  os << "status: " << hr.status << "\n";
  for (const auto& m : hr.messages) os << "  " << m << "\n";
}

std::string emit_text(const Report& r) {
  std::ostringstream os;
  os << "norden " << r.version << "\n";
  os << "input sha256: " << r.input_digest << "\n";
  os << "\n== validation ==\n";
  if (r.validation_error) {
    os << "FAILED: " << *r.validation_error << "\n";
  } else {
    os << "passed (" << r.validation.checks.size() << " checks)\n";
  }
  if (r.ambient) {
    const auto& a = *r.ambient;
    const auto d = a.dim();
    os << "\n== ambient ==\n";
    os << "dimension " << d << ", basis";
    for (const auto& l : r.labels) os << ' ' << l;
    os << "\nconnection (nonzero):\n";
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Vector v = a.nabla(basis_vector(d, i), basis_vector(d, j));
        if (!is_zero(v)) os << "  nabla_" << r.labels[i] << ' ' << r.labels[j] << " = " << format_combination(v, r.labels) << "\n";
      }
    os << "curvature R(i,j,k,l) (nonzero, i<j, k<l):\n";
    const auto& R = a.curv.riemann04;
    for (std::size_t f = 0; f < R.size(); ++f) {
      const auto idx = R.unflatten(f);
      if (R.entries()[f].is_zero() || idx[0] >= idx[1] || idx[2] >= idx[3]) continue;
      os << "  R(" << r.labels[idx[0]] << "," << r.labels[idx[1]] << "," << r.labels[idx[2]] << "," << r.labels[idx[3]]
         << ") = " << R.entries()[f].str() << "\n";
    }
    os << "kaehler-norden: " << yes_no(a.kaehler.is_kaehler_norden) << "\n";
    if (a.trsc.constant) {
      os << "totally real sectional curvatures: constant, nu = " << a.trsc.nu.str() << ", nu~ = " << a.trsc.nu_tilde.str()
         << "\n";
      if (a.associated.primed) {
        os << "associated constants: nu' = " << a.associated.primed->nu.str()
           << ", nu~' = " << a.associated.primed->nu_tilde.str() << "\n";
      }
    } else {
      os << "totally real sectional curvatures: not constant\n";
    }
    os << "ricci = " << matrix_text(a.ricci.to_matrix()) << "\n";
    checks_text(os, "ambient identities", a.identities);
  }
  for (std::size_t n = 0; n < r.hypersurfaces.size(); ++n) hypersurface_text(os, r.hypersurfaces[n], n + 1, r.labels);
  os << "\nexit status: " << static_cast<int>(r.exit_code()) << "\n";
  return os.str();
}

}  // namespace

std::string engine_version() { return NORDEN_VERSION; }

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

ExitCode Report::exit_code() const {
  int code = 0;
  if (validation_error) code = static_cast<int>(ExitCode::validation_failure);
  if (ambient && !ambient->identities.passed()) code = std::max(code, static_cast<int>(ExitCode::internal_inconsistency));
  for (const auto& h : hypersurfaces) code = std::max(code, static_cast<int>(h.severity));
  return static_cast<ExitCode>(code);
}

Report run_pipeline(const ManifoldFile& mf, std::string_view input_text) {
  Report r;
  r.version = engine_version();
  r.input_digest = sha256_hex(input_text);
  r.labels = mf.labels();

  const auto spec = mf.algebra();
  const auto ns = mf.norden();
  for (auto c : validate_lie_algebra(spec).checks) {
    c.name = "algebra." + c.name;
    r.validation.checks.push_back(std::move(c));
  }
  for (auto c : validate_norden(ns).checks) {
    c.name = "norden." + c.name;
    r.validation.checks.push_back(std::move(c));
  }
  if (const Check* f = r.validation.first_failure()) {
    r.validation_error = summarize(*f);
    return r;
  }

  r.ambient = build_ambient(spec, ns);
  const bool kaehler = r.ambient->kaehler.is_kaehler_norden;
  if (!kaehler) r.validation_error = "not Kaehler-Norden: nabla J != 0";

  for (std::size_t k = 0; k < mf.hypersurfaces.size(); ++k) {
    HypersurfaceReport hr;
    hr.block = mf.hypersurfaces[k];
    if (!kaehler) {
      hr.status = "skipped";
      hr.messages.push_back("ambient is not Kaehler-Norden");
    } else {
      try {
        hypersurface_stage(hr, mf.hypersurface(k), *r.ambient);
      } catch (const HypothesisFailure& e) {
        raise(hr, ExitCode::hypothesis_failure, "hypothesis_failure", e.what());
      } catch (const InternalInconsistency& e) {
        raise(hr, ExitCode::internal_inconsistency, "internal_inconsistency", e.what());
      }
    }
    r.hypersurfaces.push_back(std::move(hr));
  }
  return r;
}

std::string emit_report(const Report& r, ReportFormat format) {
  return format == ReportFormat::structured ? emit_structured(r) : emit_text(r);
}

}  // namespace norden
