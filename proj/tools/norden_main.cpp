#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "norden/errors.hpp"
#include "norden/manifold_file.hpp"
#include "norden/report.hpp"

namespace {

int check(const std::string& path, const std::string& format, const std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "norden: cannot read " << path << "\n";
    return static_cast<int>(norden::ExitCode::parse_error);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  norden::ManifoldFile mf;
  try {
    mf = norden::parse_manifold_file(text);
  } catch (const norden::ParseError& e) {
    std::cerr << "norden: parse error in " << path << ", " << e.what() << "\n";
    return static_cast<int>(norden::ExitCode::parse_error);
  }

  const auto report = norden::run_pipeline(mf, text);
  const auto fmt = format == "structured" ? norden::ReportFormat::structured : norden::ReportFormat::text;
  const auto rendered = norden::emit_report(report, fmt);
  if (out.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream o(out, std::ios::binary);
    if (!o) {
      std::cerr << "norden: cannot write " << out << "\n";
      return 1;
    }
    o << rendered;
  }
  return static_cast<int>(report.exit_code());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact curvature audit for lightlike hypersurfaces of Kaehler-Norden Lie algebras"};
  app.require_subcommand(1);

  std::string path, format = "text", out;
  auto* cmd = app.add_subcommand("check", "Run the full pipeline on a manifold description file");
  cmd->add_option("file", path, "Manifold description file")->required();
  cmd->add_option("--report", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--out", out, "Write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);
  try {
    return check(path, format, out);
  } catch (const std::exception& e) {
    std::cerr << "norden: internal error: " << e.what() << "\n";
    return static_cast<int>(norden::ExitCode::internal_inconsistency);
  }
}
