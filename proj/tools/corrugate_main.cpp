// Command-line front end: build corrugated surfaces from the desingularized
// cone, export meshes and defect reports, and run the property battery.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corrugate/cli_core.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "corrugate: replaces a cone tip with fine corrugations, producing a C1 "
      "surface eps-isometric to a flat cylinder"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Key=value config file; scope keys by subcommand ([cone] or "
                 "cone.eta=...). Flags override. Place before the subcommand.");

  // --- cone: one surface -----------------------------------------------
  auto* cone = app.add_subcommand(
      "cone", "Build one corrugated surface and write mesh + defect report");
  corrugate::ConeConfig cone_cfg;
  cone_cfg.N = 12;
  std::string cone_grid;
  std::string cone_out;
  std::string cone_report;
  std::string cone_format = "obj";
  cone->add_option("--N", cone_cfg.N, "Corrugation number (periods around the cone)")
      ->check(CLI::PositiveNumber)
      ->envname("CORRUGATE_N");
  cone->add_option("--eta", cone_cfg.eta, "Corrugation amplitude in (0, 1/2)")
      ->envname("CORRUGATE_ETA");
  cone->add_option("--eps", cone_cfg.eps, "Isometry defect budget (must exceed eta)")
      ->envname("CORRUGATE_EPS");
  cone->add_option("--grid", cone_grid, "Evaluation grid <nx>x<ny> (default 40N x 100)")
      ->envname("CORRUGATE_GRID");
  cone->add_option("--out", cone_out, "Mesh output path (.obj / .ply)")
      ->envname("CORRUGATE_OUT");
  cone->add_option("--report", cone_report, "Defect report JSON path")
      ->envname("CORRUGATE_REPORT");
  cone->add_option("--format", cone_format, "Mesh format")
      ->check(CLI::IsMember({"obj", "ply"}))
      ->envname("CORRUGATE_FORMAT");
  cone->add_option("--threads", cone_cfg.threads,
                   "Worker threads (0 = hardware; output is thread-count independent)")
      ->envname("CORRUGATE_THREADS");

  // --- sweep: a family over several N ----------------------------------
  auto* sweep = app.add_subcommand(
      "sweep", "Build surfaces for several N; per-N mesh + report plus defect CSV");
  corrugate::SweepCommand sweep_cmd;
  std::string sweep_format = "obj";
  sweep->add_option("--N", sweep_cmd.N_values, "Corrugation numbers (repeatable)");
  sweep->add_option("--eta", sweep_cmd.eta, "Corrugation amplitude in (0, 1/2)");
  sweep->add_option("--eps", sweep_cmd.eps, "Defect budget (default 2*eta)");
  sweep->add_option("--ny", sweep_cmd.n_y, "Grid rows (columns are fixed at 40N)");
  sweep->add_option("--out", sweep_cmd.out_dir, "Output directory");
  sweep->add_option("--report", sweep_cmd.csv, "Aggregate CSV path");
  sweep->add_option("--format", sweep_format, "Mesh format")
      ->check(CLI::IsMember({"obj", "ply"}));
  sweep->add_option("--threads", sweep_cmd.threads, "Worker threads (0 = hardware)");

  // --- verify: seeded property battery ----------------------------------
  auto* verify = app.add_subcommand(
      "verify", "Run the randomized property checks; JSON summary on stdout");
  corrugate::VerifyCommand verify_cmd;
  verify->add_option("--seed", verify_cmd.config.seed, "RNG seed for the sampled instances")
      ->envname("CORRUGATE_SEED");
  verify->add_option("--report", verify_cmd.report, "Also write the summary JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? corrugate::kExitOk : corrugate::kExitInvalidArgs;
  }

  if (cone->parsed()) {
    return corrugate::run_guarded(std::cerr, [&]() {
      corrugate::ConeCommand cmd;
      cmd.config = cone_cfg;
      if (!cone_grid.empty()) {
        const auto [nx, ny] = corrugate::parse_grid(cone_grid);
        cmd.config.n_x = nx;
        cmd.config.n_y = ny;
      }
      cmd.out = cone_out;
      cmd.report = cone_report;
      cmd.format = corrugate::parse_mesh_format(cone_format);
      return corrugate::run_cone(cmd, std::cout, std::cerr);
    });
  }
  if (sweep->parsed()) {
    return corrugate::run_guarded(std::cerr, [&]() {
      sweep_cmd.format = corrugate::parse_mesh_format(sweep_format);
      return corrugate::run_sweep(sweep_cmd, std::cout, std::cerr);
    });
  }
  return corrugate::run_verify(verify_cmd, std::cout, std::cerr);
}
