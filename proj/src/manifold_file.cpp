#include "norden/manifold_file.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "norden/errors.hpp"

namespace norden {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  std::size_t count(const std::string& tok, const char* what) const {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        tok.size() > 6) {
      fail(std::string("malformed ") + what + " '" + tok + "'");
    }
    return static_cast<std::size_t>(std::stoul(tok));
  }

  std::size_t index(const std::string& tok, std::size_t dim) const {
    const auto i = count(tok, "index");
    if (i < 1 || i > dim) fail("index " + tok + " out of range 1.." + std::to_string(dim));
    return i;
  }

  Rational rational(const std::string& tok) const {
    try {
      return Rational::parse(tok);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  // k:q pairs; `pieces` already split.
  Terms terms(const std::vector<std::string>& pieces, std::size_t dim) const {
    Terms out;
    std::set<std::size_t> seen;
    for (const auto& p : pieces) {
      const auto colon = p.find(':');
      if (colon == std::string::npos) fail("expected k:q, got '" + p + "'");
      const auto k = index(p.substr(0, colon), dim);
      if (!seen.insert(k).second) fail("duplicate term for index " + std::to_string(k));
      out.emplace_back(k, rational(p.substr(colon + 1)));
    }
    if (out.empty()) fail("expected at least one k:q term");
    return out;
  }

 private:
  std::size_t line_;
};

std::string emit_terms(const Terms& t, char sep) {
  std::string out;
  for (std::size_t n = 0; n < t.size(); ++n) {
    if (n) out += sep;
    out += std::to_string(t[n].first) + ":" + t[n].second.str();
  }
  return out;
}

}  // namespace

std::vector<std::string> ManifoldFile::labels() const {
  if (!basis.empty()) return basis;
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= dim; ++i) out.push_back("X" + std::to_string(i));
  return out;
}

LieAlgebraSpec ManifoldFile::algebra() const {
  auto spec = LieAlgebraSpec::abelian(dim);
  spec.basis_labels = labels();
  for (const auto& b : brackets)
    for (const auto& [k, q] : b.terms) {
      spec.structure_constants(b.i - 1, b.j - 1, k - 1) = q;
      spec.structure_constants(b.j - 1, b.i - 1, k - 1) = -q;
    }
  return spec;
}

NordenStructure ManifoldFile::norden() const {
  const auto d = static_cast<Index>(dim);
  Matrix g = Matrix::Zero(d, d);
  Matrix Jm = Matrix::Zero(d, d);
  for (const auto& m : metric) {
    g(static_cast<Index>(m.i - 1), static_cast<Index>(m.j - 1)) = m.value;
    g(static_cast<Index>(m.j - 1), static_cast<Index>(m.i - 1)) = m.value;
  }
  for (const auto& e : J)
    for (const auto& [k, q] : e.terms) Jm(static_cast<Index>(k - 1), static_cast<Index>(e.i - 1)) = q;
  return NordenStructure::make(g, Jm);
}

HypersurfaceSpec ManifoldFile::hypersurface(std::size_t k) const {
  const auto& blk = hypersurfaces.at(k);
  std::vector<std::size_t> idx;
  for (auto i : blk.span) idx.push_back(i - 1);
  std::optional<Vector> xi;
  if (blk.xi) {
    Vector v = Vector::Zero(static_cast<Index>(dim));
    for (const auto& [i, q] : *blk.xi) v(static_cast<Index>(i - 1)) = q;
    xi = v;
  }
  return HypersurfaceSpec::coordinate(dim, idx, blk.inducing, xi);
}

ManifoldFile parse_manifold_file(std::string_view text) {
  ManifoldFile mf;
  std::set<std::pair<std::size_t, std::size_t>> bracket_pairs, metric_pairs;
  std::set<std::size_t> j_rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto tok = split_ws(raw);
    if (tok.empty()) continue;
    const LineParser p(line_no);
    const std::string& kw = tok[0];

    if (kw == "DIM") {
      if (mf.dim) p.fail("duplicate DIM");
      if (tok.size() != 2) p.fail("DIM takes one value");
      mf.dim = p.count(tok[1], "dimension");
      if (mf.dim == 0) p.fail("DIM must be positive");
      continue;
    }
    if (!mf.dim) p.fail(kw + " before DIM");

    auto expect_equals = [&](std::size_t at) {
      if (tok.size() <= at || tok[at] != "=") p.fail("expected '=' after the indices");
    };

    if (kw == "BASIS") {
      if (!mf.basis.empty()) p.fail("duplicate BASIS");
      if (tok.size() != mf.dim + 1) p.fail("BASIS needs " + std::to_string(mf.dim) + " names");
      std::set<std::string> names(tok.begin() + 1, tok.end());
      if (names.size() != mf.dim) p.fail("duplicate basis name");
      mf.basis.assign(tok.begin() + 1, tok.end());
    } else if (kw == "BRACKET") {
      if (tok.size() < 5) p.fail("BRACKET i j = k:q [k:q ...]");
      const auto i = p.index(tok[1], mf.dim), j = p.index(tok[2], mf.dim);
      if (i == j) p.fail("BRACKET of an index with itself");
      expect_equals(3);
      if (!bracket_pairs.insert({std::min(i, j), std::max(i, j)}).second) {
        p.fail("duplicate BRACKET entry for " + std::to_string(i) + " " + std::to_string(j));
      }
      mf.brackets.push_back({i, j, p.terms({tok.begin() + 4, tok.end()}, mf.dim)});
    } else if (kw == "METRIC") {
      if (tok.size() != 5) p.fail("METRIC i j = q");
      const auto i = p.index(tok[1], mf.dim), j = p.index(tok[2], mf.dim);
      expect_equals(3);
      if (!metric_pairs.insert({std::min(i, j), std::max(i, j)}).second) {
        p.fail("duplicate METRIC entry for " + std::to_string(i) + " " + std::to_string(j));
      }
      mf.metric.push_back({i, j, p.rational(tok[4])});
    } else if (kw == "J") {
      if (tok.size() < 4) p.fail("J i = k:q [k:q ...]");
      const auto i = p.index(tok[1], mf.dim);
      expect_equals(2);
      if (!j_rows.insert(i).second) p.fail("duplicate J entry for " + std::to_string(i));
      mf.J.push_back({i, p.terms({tok.begin() + 3, tok.end()}, mf.dim)});
    } else if (kw == "HYPERSURFACE") {
      HypersurfaceBlock blk;
      bool have_metric = false, have_span = false;
      for (std::size_t t = 1; t < tok.size(); ++t) {
        const auto eq = tok[t].find('=');
        if (eq == std::string::npos) p.fail("expected key=value, got '" + tok[t] + "'");
        const std::string key = tok[t].substr(0, eq), value = tok[t].substr(eq + 1);
        if (key == "metric" && !have_metric) {
          if (value == "principal") {
            blk.inducing = InducingMetric::principal;
          } else if (value == "assoc") {
            blk.inducing = InducingMetric::associated;
          } else {
            p.fail("metric must be principal or assoc");
          }
          have_metric = true;
        } else if (key == "span" && !have_span) {
          std::set<std::size_t> seen;
          for (const auto& s : split_on(value, ',')) {
            const auto i = p.index(s, mf.dim);
            if (!seen.insert(i).second) p.fail("repeated span index " + s);
            blk.span.push_back(i);
          }
          if (blk.span.size() + 1 != mf.dim) p.fail("span needs " + std::to_string(mf.dim - 1) + " indices");
          have_span = true;
        } else if (key == "xi" && !blk.xi) {
          blk.xi = p.terms(split_on(value, ','), mf.dim);
        } else {
          p.fail("unknown or repeated HYPERSURFACE key '" + key + "'");
        }
      }
      if (!have_metric || !have_span) p.fail("HYPERSURFACE needs metric= and span=");
      mf.hypersurfaces.push_back(std::move(blk));
    } else {
      p.fail("unknown keyword '" + kw + "'");
    }
  }
  if (!mf.dim) throw ParseError(std::max<std::size_t>(line_no, 1), "missing DIM");
  return mf;
}

std::string emit_manifold_file(const ManifoldFile& mf) {
  std::ostringstream os;
  os << "DIM " << mf.dim << "\n";
  if (!mf.basis.empty()) {
    os << "BASIS";
    for (const auto& b : mf.basis) os << ' ' << b;
    os << "\n";
  }
  for (const auto& b : mf.brackets) {
    os << "BRACKET " << b.i << ' ' << b.j << " =";
    for (const auto& [k, q] : b.terms) os << ' ' << k << ':' << q;
    os << "\n";
  }
  for (const auto& m : mf.metric) os << "METRIC " << m.i << ' ' << m.j << " = " << m.value << "\n";
  for (const auto& e : mf.J) {
    os << "J " << e.i << " =";
    for (const auto& [k, q] : e.terms) os << ' ' << k << ':' << q;
    os << "\n";
  }
  for (const auto& h : mf.hypersurfaces) {
    os << "HYPERSURFACE metric=" << (h.inducing == InducingMetric::principal ? "principal" : "assoc") << " span=";
    for (std::size_t n = 0; n < h.span.size(); ++n) os << (n ? "," : "") << h.span[n];
    if (h.xi) os << " xi=" << emit_terms(*h.xi, ',');
    os << "\n";
  }
  return os.str();
}

}  // namespace norden
