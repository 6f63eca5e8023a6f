#include "corrugate/cli_core.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string_view>

#include "corrugate/report.hpp"

namespace corrugate {
namespace {

int parse_positive_int(const char* flag, std::string_view text) {
  int value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || value <= 0) {
    throw InvalidParams(std::string(flag) + " expects a positive integer, got \"" +
                        std::string(text) + "\"");
  }
  return value;
}

std::string mesh_extension(MeshFormat format) {
  return format == MeshFormat::Obj ? ".obj" : ".ply";
}

}  // namespace

int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  } catch (const OutOfSubsolution& e) {
    err << "error: " << e.what() << '\n';
    return kExitOutOfSubsolution;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto sep = text.find('x');
  if (sep == std::string::npos || sep == 0 || sep + 1 >= text.size()) {
    throw InvalidParams("--grid expects <nx>x<ny>, got \"" + text + "\"");
  }
  const int nx = parse_positive_int("--grid", std::string_view(text).substr(0, sep));
  const int ny = parse_positive_int("--grid", std::string_view(text).substr(sep + 1));
  return {nx, ny};
}

MeshFormat parse_mesh_format(const std::string& name) {
  if (name == "obj") return MeshFormat::Obj;
  if (name == "ply") return MeshFormat::Ply;
  throw InvalidParams("--format must be obj or ply, got \"" + name + "\"");
}

int run_cone(const ConeCommand& cmd, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    cmd.config.validate();
    const auto [sample, report] = build_cone_surface(cmd.config);
    if (!cmd.out.empty()) {
      write_mesh(cmd.out, build_mesh(sample, cmd.format));
    }
    if (!cmd.report.empty()) {
      write_report(cmd.report, report);
    }
    out << report_to_json(report) << '\n';
    return kExitOk;
  });
}

int run_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    if (cmd.N_values.empty()) {
      throw InvalidParams("--N: at least one corrugation number is required");
    }
    for (int N : cmd.N_values) {
      if (N < 1) {
        throw InvalidParams("--N must be a positive integer, got " + std::to_string(N));
      }
    }
    const double eps = cmd.eps > 0.0 ? cmd.eps : 2.0 * cmd.eta;
    const std::filesystem::path dir(cmd.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      throw IoError("cannot create output directory: " + dir.string());
    }

    std::vector<DefectReport> reports;
    reports.reserve(cmd.N_values.size());
    for (int N : cmd.N_values) {
      ConeConfig cfg;
      cfg.N = N;
      cfg.eta = cmd.eta;
      cfg.eps = eps;
      cfg.n_y = cmd.n_y;
      cfg.threads = cmd.threads;
      cfg.validate();
      const auto [sample, report] = build_cone_surface(cfg);
      const std::string stem = "cone_N" + std::to_string(N);
      write_mesh((dir / (stem + mesh_extension(cmd.format))).string(),
                 build_mesh(sample, cmd.format));
      write_report((dir / (stem + ".json")).string(), report);
      out << "N=" << N << " c0_distance=" << format_double(report.c0_distance)
          << " max_e11=" << format_double(report.max_e11)
          << " max_e12=" << format_double(report.max_e12)
          << " max_e22=" << format_double(report.max_e22) << '\n';
      reports.push_back(report);
    }
    const std::string csv =
        cmd.csv.empty() ? (dir / "sweep.csv").string() : cmd.csv;
    write_sweep_csv(csv, reports);
    out << "wrote " << csv << '\n';
    return kExitOk;
  });
}

int run_verify(const VerifyCommand& cmd, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    const VerifySummary summary = run_verification(cmd.config);
    for (const CheckResult& c : summary.checks) {
      err << (c.passed ? "[ok]   " : "[FAIL] ") << c.name
          << " instances=" << c.instances << " worst=" << format_double(c.worst);
      if (!c.detail.empty()) {
        err << " (" << c.detail << ")";
      }
      err << '\n';
    }
    const std::string json = summary_to_json(summary);
    out << json << '\n';
    if (!cmd.report.empty()) {
      std::ofstream file(cmd.report, std::ios::binary);
      if (!file) {
        throw IoError("cannot open for writing: " + cmd.report);
      }
      file << json << '\n';
      file.flush();
      if (!file) {
        throw IoError("write failed: " + cmd.report);
      }
    }
    return summary.all_passed() ? kExitOk : kExitFailure;
  });
}

}  // namespace corrugate
