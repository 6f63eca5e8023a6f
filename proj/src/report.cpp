#include "corrugate/report.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace corrugate {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kKeys[] = {"N",       "eta",     "eps",
                                 "grid",    "max_e11", "max_e12",
                                 "max_e22", "c0_distance", "min_immersion_margin"};

}  // namespace

std::string report_to_json(const DefectReport& report, int indent) {
  Json j;
  j["N"] = report.N;
  j["eta"] = report.eta;
  j["eps"] = report.eps;
  j["grid"] = {report.grid_nx, report.grid_ny};
  j["max_e11"] = report.max_e11;
  j["max_e12"] = report.max_e12;
  j["max_e22"] = report.max_e22;
  j["c0_distance"] = report.c0_distance;
  j["min_immersion_margin"] = report.min_immersion_margin;
  return j.dump(indent);
}

DefectReport report_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw IoError(std::string("report parse error: ") + e.what());
  }
  if (!j.is_object()) {
    throw IoError("report parse error: top level is not an object");
  }
  for (const char* key : kKeys) {
    if (!j.contains(key)) {
      throw IoError(std::string("report parse error: missing key \"") + key + "\"");
    }
  }
  if (j.size() != std::size(kKeys)) {
    throw IoError("report parse error: unexpected extra keys");
  }
  DefectReport r;
  try {
    r.N = j.at("N").get<int>();
    r.eta = j.at("eta").get<double>();
    r.eps = j.at("eps").get<double>();
    const Json& grid = j.at("grid");
    if (!grid.is_array() || grid.size() != 2) {
      throw IoError("report parse error: \"grid\" must be [nx, ny]");
    }
    r.grid_nx = grid.at(0).get<int>();
    r.grid_ny = grid.at(1).get<int>();
    r.max_e11 = j.at("max_e11").get<double>();
    r.max_e12 = j.at("max_e12").get<double>();
    r.max_e22 = j.at("max_e22").get<double>();
    r.c0_distance = j.at("c0_distance").get<double>();
    r.min_immersion_margin = j.at("min_immersion_margin").get<double>();
  } catch (const Json::exception& e) {
    throw IoError(std::string("report parse error: ") + e.what());
  }
  return r;
}

void write_report(const std::string& path, const DefectReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << report_to_json(report) << '\n';
  out.flush();
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

DefectReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failed: " + path);
  }
  return report_from_json(ss.str());
}

}  // namespace corrugate
