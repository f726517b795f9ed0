#include "stvgkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "stvgkit/errors.hpp"

namespace stvg {

const char* comparison_name(Comparison c) {
  return c == Comparison::Strict ? "strict" : "nonstrict";
}

Comparison parse_comparison(const std::string& name) {
  if (name == "strict") return Comparison::Strict;
  if (name == "nonstrict") return Comparison::NonStrict;
  throw std::invalid_argument("unknown comparison '" + name + "' (strict|nonstrict)");
}

const char* missing_policy_name(MissingPolicy m) {
  return m == MissingPolicy::ScoreZero ? "score_zero" : "skip";
}

MissingPolicy parse_missing_policy(const std::string& name) {
  if (name == "score_zero") return MissingPolicy::ScoreZero;
  if (name == "skip") return MissingPolicy::Skip;
  throw std::invalid_argument("unknown missing policy '" + name + "' (score_zero|skip)");
}

double tiou(const Segment& pred, const Segment& gt) {
  const std::int64_t pred_count = segment_frame_count(pred);
  const std::int64_t gt_count = segment_frame_count(gt);
  const std::int64_t inter_start = std::max(pred.start_frame, gt.start_frame);
  const std::int64_t inter_end = std::min(pred.end_frame, gt.end_frame);
  const std::int64_t inter = inter_end >= inter_start ? inter_end - inter_start + 1 : 0;
  if (inter == 0) return 0.0;
  const std::int64_t uni = pred_count + gt_count - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double viou(const Tube& pred, const Tube& gt) {
  require_valid_tube(pred, "prediction");
  require_valid_tube(gt, "groundtruth");
  if (pred.video_id != gt.video_id) {
    throw std::invalid_argument("vIoU across different videos ('" + pred.video_id +
                                "' vs '" + gt.video_id + "')");
  }
  const std::int64_t inter_start = std::max(pred.segment.start_frame, gt.segment.start_frame);
  const std::int64_t inter_end = std::min(pred.segment.end_frame, gt.segment.end_frame);
  const std::int64_t inter = inter_end >= inter_start ? inter_end - inter_start + 1 : 0;
  if (inter == 0) return 0.0;
  const std::int64_t uni = segment_frame_count(pred.segment) +
                           segment_frame_count(gt.segment) - inter;
  double overlap_sum = 0.0;
  for (std::int64_t f = inter_start; f <= inter_end; ++f) {
    const BBox* pb = pred.box_at(f);
    const BBox* gb = gt.box_at(f);
    if (pb != nullptr && gb != nullptr) overlap_sum += box_iou(*pb, *gb);
  }
  return overlap_sum / static_cast<double>(uni);
}

double viou_at_r(const std::vector<double>& per_video_viou, double r, Comparison cmp) {
  if (per_video_viou.empty()) {
    throw std::invalid_argument("vIoU@R over an empty list");
  }
  if (!(r > 0.0 && r < 1.0)) {
    throw std::invalid_argument("vIoU@R threshold must lie in (0, 1)");
  }
  std::size_t hits = 0;
  for (const double v : per_video_viou) {
    if (cmp == Comparison::Strict ? v > r : v >= r) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(per_video_viou.size());
}

MetricReport evaluate_dataset(const std::vector<Tube>& preds,
                              const std::vector<Tube>& gts,
                              const EvalOptions& options) {
  if (gts.empty()) throw std::invalid_argument("no groundtruth tubes to evaluate against");
  for (const double r : options.thresholds) {
    if (!(r > 0.0 && r < 1.0)) {
      throw std::invalid_argument("vIoU@R threshold must lie in (0, 1)");
    }
  }

  std::map<std::string, const Tube*> pred_by_id;
  for (const Tube& p : preds) {
    if (!pred_by_id.emplace(p.video_id, &p).second) {
      throw std::invalid_argument("duplicate prediction for video '" + p.video_id + "'");
    }
  }
  std::map<std::string, const Tube*> gt_by_id;
  for (const Tube& g : gts) {
    if (!gt_by_id.emplace(g.video_id, &g).second) {
      throw std::invalid_argument("duplicate groundtruth for video '" + g.video_id + "'");
    }
  }

  MetricReport report;
  report.comparison = options.comparison;
  report.missing_policy = options.missing;
  report.n_gt = static_cast<std::int64_t>(gt_by_id.size());

  // gt_by_id iterates in sorted video_id order, which fixes both the
  // per-video listing and the summation order below.
  for (const auto& [id, gt] : gt_by_id) {
    const auto it = pred_by_id.find(id);
    if (it == pred_by_id.end()) {
      ++report.n_missing;
      if (options.missing == MissingPolicy::ScoreZero) {
        report.per_video.push_back({id, 0.0, 0.0, true});
      }
      continue;
    }
    const Tube& pred = *it->second;
    report.per_video.push_back(
        {id, viou(pred, *gt), tiou(pred.segment, gt->segment), false});
  }
  for (const auto& [id, pred] : pred_by_id) {
    (void)pred;
    if (!gt_by_id.count(id)) ++report.n_unmatched_preds;
  }

  if (!report.per_video.empty()) {
    double viou_sum = 0.0;
    double tiou_sum = 0.0;
    std::vector<double> vious;
    vious.reserve(report.per_video.size());
    for (const PerVideoMetrics& m : report.per_video) {
      viou_sum += m.viou;
      tiou_sum += m.tiou;
      vious.push_back(m.viou);
    }
    const auto n = static_cast<double>(report.per_video.size());
    report.mean_viou = viou_sum / n;
    report.mean_tiou = tiou_sum / n;
    for (const double r : options.thresholds) {
      report.viou_at.emplace_back(r, viou_at_r(vious, r, options.comparison));
    }
  } else {
    for (const double r : options.thresholds) report.viou_at.emplace_back(r, 0.0);
  }
  return report;
}

}  // namespace stvg
