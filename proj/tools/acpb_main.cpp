// Command-line front end: loads a scenario document, runs one of the
// verification / geometry / dynamics / curve commands and writes the
// JSON report (and any CSV artifacts) to the output directory.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "acpb/cli.hpp"

namespace {

int log_level() {
  const char* env = std::getenv("ACPB_LOG");
  if (!env) return 1;
  std::string v(env);
  if (v == "quiet") return 0;
  if (v == "debug") return 2;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost complex structures on principal bundles - numerical toolkit"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  acpb::cli::Options opt;
  std::uint64_t seed_flag = 0;
  int points_flag = 0;
  double step_flag = 0.0, tol_flag = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    cmd->add_option("--out", out_dir, "output directory for report and artifacts");
    cmd->add_option("--seed", seed_flag, "override the scenario seed");
    cmd->add_option("--points", points_flag, "override the sample count");
    cmd->add_option("--step", step_flag, "override the integrator / probe step");
    cmd->add_option("--tol", tol_flag, "override the verdict tolerance");
  };

  CLI::App* verify = app.add_subcommand("verify", "integrability residual sweep");
  CLI::App* curvature = app.add_subcommand("curvature", "induced-metric curvature sweep");
  CLI::App* geodesic = app.add_subcommand("geodesic", "horizontal-flow geodesic trace");
  CLI::App* curve = app.add_subcommand("curve", "holomorphic-curve development report");
  for (CLI::App* c : {verify, curvature, geodesic, curve}) add_common(c);

  CLI11_PARSE(app, argc, argv);

  std::string command = app.get_subcommands().front()->get_name();
  if (verify->count("--seed") || curvature->count("--seed") ||
      geodesic->count("--seed") || curve->count("--seed"))
    opt.seed = seed_flag;
  if (points_flag > 0) opt.points = points_flag;
  if (step_flag > 0.0) opt.step = step_flag;
  if (tol_flag > 0.0) opt.tol = tol_flag;

  acpb::Json scenario;
  {
    std::ifstream in(scenario_path);
    if (!in) {
      std::cerr << "cannot open scenario file: " << scenario_path << "\n";
      return acpb::cli::kUsage;
    }
    try {
      in >> scenario;
    } catch (const std::exception& e) {
      std::cerr << "scenario parse error: " << e.what() << "\n";
      return acpb::cli::kUsage;
    }
  }

  acpb::cli::CommandResult result = acpb::cli::run_command(command, scenario, opt);

  std::string report = result.report.dump(2);
  std::cout << report << "\n";
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::ofstream(std::filesystem::path(out_dir) / "report.json") << report << "\n";
    for (const auto& [name, payload] : result.files)
      std::ofstream(std::filesystem::path(out_dir) / name) << payload;
    if (log_level() >= 1)
      std::cerr << "wrote report.json and " << result.files.size()
                << " artifact(s) to " << out_dir << "\n";
  }
  return result.exit_code;
}
