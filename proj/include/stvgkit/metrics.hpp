#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stvgkit/tubes.hpp"

namespace stvg {

// vIoU@R counts videos whose vIoU is strictly larger than R by default;
// NonStrict switches to >=.
enum class Comparison { Strict, NonStrict };

// How groundtruth videos without a prediction are scored.
enum class MissingPolicy { ScoreZero, Skip };

const char* comparison_name(Comparison c);
Comparison parse_comparison(const std::string& name);
const char* missing_policy_name(MissingPolicy m);
MissingPolicy parse_missing_policy(const std::string& name);

// Temporal IoU: shared frames over united frames of the two segments.
double tiou(const Segment& pred, const Segment& gt);

// Spatio-temporal IoU: the sum of per-frame box IoU over the frames both
// segments share, divided by the number of frames in their union. Frames
// where either tube lacks a box contribute zero overlap. Throws
// std::invalid_argument when the tubes name different videos.
double viou(const Tube& pred, const Tube& gt);

// Fraction of entries above the threshold r in (0, 1). Throws
// std::invalid_argument on an empty list or out-of-range r.
double viou_at_r(const std::vector<double>& per_video_viou, double r,
                 Comparison cmp = Comparison::Strict);

struct PerVideoMetrics {
  std::string video_id;
  double viou = 0.0;
  double tiou = 0.0;
  bool missing_prediction = false;

  bool operator==(const PerVideoMetrics&) const = default;
};

struct EvalOptions {
  std::vector<double> thresholds{0.3, 0.5};
  Comparison comparison = Comparison::Strict;
  MissingPolicy missing = MissingPolicy::ScoreZero;
};

struct MetricReport {
  double mean_viou = 0.0;
  double mean_tiou = 0.0;
  // (threshold, fraction), in threshold order.
  std::vector<std::pair<double, double>> viou_at;
  // Sorted by video_id; under MissingPolicy::Skip, unmatched groundtruth
  // videos are absent.
  std::vector<PerVideoMetrics> per_video;
  std::int64_t n_gt = 0;
  std::int64_t n_missing = 0;
  std::int64_t n_unmatched_preds = 0;
  Comparison comparison = Comparison::Strict;
  MissingPolicy missing_policy = MissingPolicy::ScoreZero;
};

// Scores one prediction tube per groundtruth video. Predictions are matched
// by video_id; duplicates on either side are an error. Aggregation iterates
// video ids in sorted order, so results do not depend on input order.
MetricReport evaluate_dataset(const std::vector<Tube>& preds,
                              const std::vector<Tube>& gts,
                              const EvalOptions& options = {});

}  // namespace stvg
