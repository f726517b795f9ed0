#include "stvgkit/linking.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace stvg {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_valid_params(const LinkParams& p) {
  if (!(p.iou_continuity_threshold >= 0.0 && p.iou_continuity_threshold <= 1.0)) {
    throw std::invalid_argument("iou_continuity_threshold must lie in [0, 1]");
  }
  if (!(p.score_weight >= 0.0) || !std::isfinite(p.score_weight)) {
    throw std::invalid_argument("score_weight must be finite and nonnegative");
  }
  if (p.max_gap_frames < 0) throw std::invalid_argument("max_gap_frames must be >= 0");
  if (p.min_tube_length < 1) throw std::invalid_argument("min_tube_length must be >= 1");
  if (p.max_tubes < 1) throw std::invalid_argument("max_tubes must be >= 1");
}

void require_valid_detections(const std::vector<Detection>& dets) {
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const Detection& d = dets[i];
    if (d.frame_index < 0) {
      throw std::invalid_argument("detection " + std::to_string(i) +
                                  " has a negative frame index");
    }
    if (!box_valid(d.box)) {
      throw std::invalid_argument("detection " + std::to_string(i) + " has an invalid box");
    }
    if (!std::isfinite(d.score)) {
      throw std::invalid_argument("detection " + std::to_string(i) +
                                  " has a non-finite score");
    }
    if (i > 0 && d.frame_index < dets[i - 1].frame_index) {
      throw std::invalid_argument("detections must be sorted by frame index");
    }
  }
}

BBox lerp_box(const BBox& a, const BBox& b, double t) {
  return BBox{a.x1 + (b.x1 - a.x1) * t, a.y1 + (b.y1 - a.y1) * t,
              a.x2 + (b.x2 - a.x2) * t, a.y2 + (b.y2 - a.y2) * t};
}

}  // namespace

std::vector<LinkedTube> link_detections(const std::vector<Detection>& detections,
                                        const LinkParams& params,
                                        const std::string& video_id) {
  require_valid_params(params);
  if (detections.empty()) return {};
  require_valid_detections(detections);

  // Input order within a frame is preserved; it is the final tie breaker.
  std::map<std::int64_t, std::vector<std::size_t>> by_frame;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    by_frame[detections[i].frame_index].push_back(i);
  }

  std::vector<char> used(detections.size(), 0);
  std::vector<LinkedTube> kept;
  std::int64_t built = 0;

  while (built < params.max_tubes) {
    // Seed: the highest-score unused detection of the earliest frame that
    // still has one; equal scores resolve to input order.
    std::size_t seed = kNone;
    for (const auto& [frame, idxs] : by_frame) {
      (void)frame;
      for (const std::size_t i : idxs) {
        if (used[i]) continue;
        if (seed == kNone || detections[i].score > detections[seed].score) seed = i;
      }
      if (seed != kNone) break;
    }
    if (seed == kNone) break;

    LinkedTube result;
    result.tube.video_id = video_id;
    result.tube.segment = {detections[seed].frame_index, detections[seed].frame_index};
    result.tube.boxes[detections[seed].frame_index] = detections[seed].box;
    result.detection_indices.push_back(seed);
    used[seed] = 1;

    std::int64_t cur_frame = detections[seed].frame_index;
    BBox last_box = detections[seed].box;

    while (true) {
      // Nearest qualifying frame first, scanning at most max_gap_frames
      // missing frames ahead.
      std::size_t chosen = kNone;
      std::int64_t chosen_frame = 0;
      for (std::int64_t gap = 0; gap <= params.max_gap_frames && chosen == kNone; ++gap) {
        const std::int64_t target = cur_frame + 1 + gap;
        const auto it = by_frame.find(target);
        if (it == by_frame.end()) continue;
        double best_objective = 0.0;
        for (const std::size_t i : it->second) {
          if (used[i]) continue;
          const double overlap = box_iou(last_box, detections[i].box);
          if (overlap < params.iou_continuity_threshold) continue;
          const double objective = detections[i].score + params.score_weight * overlap;
          const bool better =
              chosen == kNone || objective > best_objective ||
              (objective == best_objective &&
               detections[i].score > detections[chosen].score);
          if (better) {
            chosen = i;
            chosen_frame = target;
            best_objective = objective;
          }
        }
      }
      if (chosen == kNone) break;

      for (std::int64_t f = cur_frame + 1; f < chosen_frame; ++f) {
        const double frac = static_cast<double>(f - cur_frame) /
                            static_cast<double>(chosen_frame - cur_frame);
        result.tube.boxes[f] = lerp_box(last_box, detections[chosen].box, frac);
        result.interpolated_frames.push_back(f);
      }
      result.tube.boxes[chosen_frame] = detections[chosen].box;
      result.detection_indices.push_back(chosen);
      used[chosen] = 1;
      cur_frame = chosen_frame;
      last_box = detections[chosen].box;
    }

    result.tube.segment.end_frame = cur_frame;
    ++built;
    if (segment_frame_count(result.tube.segment) < params.min_tube_length) continue;

    std::vector<Detection> linked;
    linked.reserve(result.detection_indices.size());
    for (const std::size_t i : result.detection_indices) linked.push_back(detections[i]);
    result.mean_score = tube_score(result.tube, linked);
    kept.push_back(std::move(result));
  }
  return kept;
}

double tube_score(const Tube& tube, const std::vector<Detection>& linked_detections) {
  (void)tube;
  if (linked_detections.empty()) {
    throw std::invalid_argument("tube score over an empty detection list");
  }
  double sum = 0.0;
  for (const Detection& d : linked_detections) sum += d.score;
  return sum / static_cast<double>(linked_detections.size());
}

}  // namespace stvg
