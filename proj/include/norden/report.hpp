#pragma once

// Pipeline orchestration and report emission.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "norden/ambient.hpp"
#include "norden/audit.hpp"
#include "norden/hypersurface.hpp"
#include "norden/manifold_file.hpp"

namespace norden {

enum class ExitCode : int {
  ok = 0,
  parse_error = 2,
  validation_failure = 3,
  hypothesis_failure = 4,
  internal_inconsistency = 5,
};

std::string engine_version();

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

struct HypersurfaceReport {
  HypersurfaceBlock block;
  std::string status = "ok";
  ExitCode severity = ExitCode::ok;
  std::vector<std::string> messages;

  std::optional<Classification> classification;
  std::optional<Vector> normal;  // nondegenerate case: h-normal, not unit-normalized
  std::optional<LightlikeFrame> frame;
  std::optional<RadicalTransversal> rt;
  std::optional<SecondFundamental> sf;
  std::optional<UmbilicalResult> umbilical;
  std::optional<CheckReport> identities;
  std::optional<InducedCurvature> curvature;
  std::optional<RicciRoutes> ricci;
  std::optional<SymmetryFlags> flags;
  std::optional<bool> closed_form_matches;
  std::optional<PdeResiduals> pde;
  std::optional<AuditVerdict> audit;
};

struct Report {
  std::string version;
  std::string input_digest;
  std::vector<std::string> labels;
  CheckReport validation;
  std::optional<std::string> validation_error;
  std::optional<AmbientGeometry> ambient;
  std::vector<HypersurfaceReport> hypersurfaces;

  /// Highest severity over every section.
  ExitCode exit_code() const;
};

Report run_pipeline(const ManifoldFile& mf, std::string_view input_text);

enum class ReportFormat { text, structured };

std::string emit_report(const Report& r, ReportFormat format);

}  // namespace norden
