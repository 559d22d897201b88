#pragma once

// Line-oriented manifold description files:
//
//   DIM 4
//   BASIS e1 e2 e3 e4
//   BRACKET 1 2 = 4:-2            [X1, X2] = -2 X4
//   METRIC 3 3 = -1               symmetric closure applied
//   J 1 = 3:1                     J X1 = X3
//   HYPERSURFACE metric=assoc span=2,3,4 xi=3:-1
//
// Indices are 1-based; `#` starts a comment.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "norden/ambient.hpp"
#include "norden/hypersurface.hpp"
#include "norden/rational.hpp"

namespace norden {

using Terms = std::vector<std::pair<std::size_t, Rational>>;  // (1-based index, coefficient)

struct BracketEntry {
  std::size_t i = 0, j = 0;
  Terms terms;
  bool operator==(const BracketEntry&) const = default;
};

struct MetricEntry {
  std::size_t i = 0, j = 0;
  Rational value;
  bool operator==(const MetricEntry&) const = default;
};

struct JEntry {
  std::size_t i = 0;
  Terms terms;
  bool operator==(const JEntry&) const = default;
};

struct HypersurfaceBlock {
  InducingMetric inducing = InducingMetric::principal;
  std::vector<std::size_t> span;  // 1-based basis indices
  std::optional<Terms> xi;
  bool operator==(const HypersurfaceBlock&) const = default;
};

struct ManifoldFile {
  std::size_t dim = 0;
  std::vector<std::string> basis;  // empty: X1..Xdim
  std::vector<BracketEntry> brackets;
  std::vector<MetricEntry> metric;
  std::vector<JEntry> J;
  std::vector<HypersurfaceBlock> hypersurfaces;

  bool operator==(const ManifoldFile&) const = default;

  std::vector<std::string> labels() const;
  LieAlgebraSpec algebra() const;
  NordenStructure norden() const;
  HypersurfaceSpec hypersurface(std::size_t k) const;
};

/// Throws ParseError with the offending line number.
ManifoldFile parse_manifold_file(std::string_view text);

/// Canonical text form; parse_manifold_file(emit_manifold_file(mf)) == mf.
std::string emit_manifold_file(const ManifoldFile& mf);

}  // namespace norden
