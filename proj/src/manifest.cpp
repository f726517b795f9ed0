#include "stvgkit/manifest.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stvgkit/errors.hpp"

namespace stvg {

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("version") || !j.contains("splits")) {
    throw IoError(path.string() + ": manifest needs 'version' and 'splits'");
  }
  if (!j["version"].is_string() || !j["splits"].is_object()) {
    throw IoError(path.string() + ": 'version' must be a string and 'splits' an object");
  }
  DatasetManifest m;
  m.version = j["version"].get<std::string>();
  for (const auto& [split, count] : j["splits"].items()) {
    if (!count.is_number_integer() || count.get<std::int64_t>() < 0) {
      throw IoError(path.string() + ": split '" + split +
                    "' must map to a nonnegative integer");
    }
    m.splits.emplace_back(split, count.get<std::int64_t>());
  }
  if (m.splits.empty()) {
    throw IoError(path.string() + ": manifest declares no splits");
  }
  return m;
}

ManifestReport validate_manifest(const DatasetManifest& manifest,
                                 const std::map<std::string, std::int64_t>& records_by_split) {
  ManifestReport report;
  report.version = manifest.version;
  for (const auto& [split, expected] : manifest.splits) {
    const auto it = records_by_split.find(split);
    const std::int64_t actual = it == records_by_split.end() ? 0 : it->second;
    const bool pass = actual == expected;
    report.checks.push_back({split, expected, actual, pass});
    report.all_pass = report.all_pass && pass;
  }
  return report;
}

std::string format_manifest_report(const ManifestReport& report) {
  std::ostringstream out;
  out << "manifest version " << report.version << '\n';
  for (const SplitCheck& c : report.checks) {
    out << "  split " << c.split << ": expected " << c.expected << ", found " << c.actual
        << (c.pass ? "  PASS" : "  FAIL") << '\n';
  }
  out << (report.all_pass ? "all splits match" : "split counts do not match") << '\n';
  return out.str();
}

}  // namespace stvg
