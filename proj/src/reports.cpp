#include "stvgkit/reports.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stvgkit/errors.hpp"

namespace stvg {

namespace {

std::string threshold_key(double r) {
  // Shortest round-trip decimal form, e.g. 0.3 -> "0.3".
  return nlohmann::json(r).dump();
}

}  // namespace

std::string report_to_json(const MetricReport& report) {
  nlohmann::ordered_json j;
  j["mean_viou"] = report.mean_viou;
  j["mean_tiou"] = report.mean_tiou;
  nlohmann::ordered_json at = nlohmann::ordered_json::object();
  for (const auto& [r, fraction] : report.viou_at) at[threshold_key(r)] = fraction;
  j["viou_at"] = std::move(at);
  j["n_gt"] = report.n_gt;
  j["n_missing"] = report.n_missing;
  j["n_unmatched_preds"] = report.n_unmatched_preds;
  j["comparison"] = comparison_name(report.comparison);
  j["missing_policy"] = missing_policy_name(report.missing_policy);
  nlohmann::ordered_json per_video = nlohmann::ordered_json::array();
  for (const PerVideoMetrics& m : report.per_video) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    row["video_id"] = m.video_id;
    row["viou"] = m.viou;
    row["tiou"] = m.tiou;
    if (m.missing_prediction) row["missing_prediction"] = true;
    per_video.push_back(std::move(row));
  }
  j["per_video"] = std::move(per_video);
  return j.dump(2);
}

void write_report(const MetricReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << report_to_json(report) << '\n';
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

std::string format_report_table(const MetricReport& report, const std::string& label) {
  std::ostringstream out;
  const std::string name = label.empty() ? "prediction" : label;
  const std::size_t name_width = std::max<std::size_t>(name.size(), 24);

  out << std::left << std::setw(static_cast<int>(name_width + 2)) << "method";
  out << std::right << std::setw(10) << "vIoU" << std::setw(10) << "tIoU";
  for (const auto& [r, fraction] : report.viou_at) {
    (void)fraction;
    out << std::setw(10) << ("vIoU@" + threshold_key(r));
  }
  out << '\n';

  out << std::left << std::setw(static_cast<int>(name_width + 2)) << name;
  out << std::right << std::fixed << std::setprecision(4);
  out << std::setw(10) << report.mean_viou << std::setw(10) << report.mean_tiou;
  for (const auto& [r, fraction] : report.viou_at) {
    (void)r;
    out << std::setw(10) << fraction;
  }
  out << '\n';

  out.unsetf(std::ios::fixed);
  out << report.n_gt << " groundtruth video(s), " << report.n_missing
      << " without a prediction (" << missing_policy_name(report.missing_policy) << "), "
      << report.n_unmatched_preds << " prediction(s) without groundtruth; vIoU@R counts "
      << (report.comparison == Comparison::Strict ? "vIoU > R" : "vIoU >= R") << '\n';
  return out.str();
}

}  // namespace stvg
