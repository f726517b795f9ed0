#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stvg {

// Expected record counts per split for one dataset release.
struct DatasetManifest {
  std::string version;
  // Declaration order of the manifest file is preserved.
  std::vector<std::pair<std::string, std::int64_t>> splits;
};

// Reads {"version": "...", "splits": {"train": N, ...}}.
DatasetManifest read_manifest(const std::filesystem::path& path);

struct SplitCheck {
  std::string split;
  std::int64_t expected = 0;
  std::int64_t actual = 0;
  bool pass = false;
};

struct ManifestReport {
  std::string version;
  std::vector<SplitCheck> checks;
  bool all_pass = true;
};

// Compares the manifest against observed per-split record counts. Splits
// absent from records_by_split count as zero. Never throws; mismatches are
// reported, not raised.
ManifestReport validate_manifest(const DatasetManifest& manifest,
                                 const std::map<std::string, std::int64_t>& records_by_split);

std::string format_manifest_report(const ManifestReport& report);

}  // namespace stvg
