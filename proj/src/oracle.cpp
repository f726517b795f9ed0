#include "stvgkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace stvg::oracle {

namespace {

std::set<std::int64_t> frame_set(const Segment& s) {
  std::set<std::int64_t> out;
  for (std::int64_t f = s.start_frame; f <= s.end_frame; ++f) out.insert(f);
  return out;
}

// Box overlap recomputed from scratch so this path shares nothing with
// stvg::box_iou.
double plain_box_iou(const BBox& a, const BBox& b) {
  const double ix1 = a.x1 > b.x1 ? a.x1 : b.x1;
  const double iy1 = a.y1 > b.y1 ? a.y1 : b.y1;
  const double ix2 = a.x2 < b.x2 ? a.x2 : b.x2;
  const double iy2 = a.y2 < b.y2 ? a.y2 : b.y2;
  double inter = 0.0;
  if (ix2 > ix1 && iy2 > iy1) inter = (ix2 - ix1) * (iy2 - iy1);
  const double area_a = (a.x2 - a.x1) * (a.y2 - a.y1);
  const double area_b = (b.x2 - b.x1) * (b.y2 - b.y1);
  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

double plain_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double oracle_tiou(const Segment& pred, const Segment& gt) {
  const std::set<std::int64_t> a = frame_set(pred);
  const std::set<std::int64_t> b = frame_set(gt);
  std::set<std::int64_t> uni = a;
  uni.insert(b.begin(), b.end());
  std::size_t inter = 0;
  for (const std::int64_t f : a) inter += b.count(f);
  if (uni.empty()) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni.size());
}

double oracle_viou(const Tube& pred, const Tube& gt) {
  const std::set<std::int64_t> a = frame_set(pred.segment);
  const std::set<std::int64_t> b = frame_set(gt.segment);
  std::set<std::int64_t> uni = a;
  uni.insert(b.begin(), b.end());
  double sum = 0.0;
  for (const std::int64_t f : a) {
    if (!b.count(f)) continue;
    const auto pit = pred.boxes.find(f);
    const auto git = gt.boxes.find(f);
    if (pit == pred.boxes.end() || git == gt.boxes.end()) continue;
    sum += plain_box_iou(pit->second, git->second);
  }
  return sum / static_cast<double>(uni.size());
}

MomentSelection oracle_select_moment(const MomentMap& map, ContrastiveNormalization norm) {
  MomentSelection best;
  bool have_best = false;
  std::size_t idx = 0;
  for (int i = 0; i < map.n_clips; ++i) {
    for (int j = i; j < map.n_clips; ++j, ++idx) {
      const double raw = map.contrastive[idx];
      const double c = norm == ContrastiveNormalization::Sigmoid ? plain_sigmoid(raw) : raw;
      const double score = map.predicted_iou[idx] * c;
      // Explicit tie handling: higher score, then earlier start, then
      // shorter span.
      const bool better =
          !have_best || score > best.combined_score ||
          (score == best.combined_score &&
           (i < best.span.first_clip ||
            (i == best.span.first_clip && j - i < best.span.last_clip - best.span.first_clip)));
      if (better) {
        best.span = ClipSpan{i, j};
        best.combined_score = score;
        have_best = true;
      }
    }
  }
  return best;
}

std::vector<std::string> oracle_link_check(const std::vector<LinkedTube>& tubes,
                                           const std::vector<Detection>& detections,
                                           const LinkParams& params) {
  std::vector<std::string> problems;
  const auto complain = [&problems](std::size_t tube_idx, const std::string& what) {
    problems.push_back("tube " + std::to_string(tube_idx) + ": " + what);
  };

  if (static_cast<std::int64_t>(tubes.size()) > params.max_tubes) {
    problems.push_back("more tubes than max_tubes");
  }

  std::set<std::size_t> seen_indices;
  for (std::size_t t = 0; t < tubes.size(); ++t) {
    const LinkedTube& lt = tubes[t];
    if (!tube_ok(lt.tube)) {
      complain(t, "tube fails validation");
      continue;
    }
    const std::int64_t length = lt.tube.segment.end_frame - lt.tube.segment.start_frame + 1;
    if (length < params.min_tube_length) complain(t, "shorter than min_tube_length");

    const std::set<std::int64_t> interpolated(lt.interpolated_frames.begin(),
                                              lt.interpolated_frames.end());

    // Every detection index must be fresh, in range, and agree with the
    // box stored at its frame.
    std::vector<std::int64_t> real_frames;
    for (const std::size_t i : lt.detection_indices) {
      if (i >= detections.size()) {
        complain(t, "detection index out of range");
        continue;
      }
      if (!seen_indices.insert(i).second) {
        complain(t, "detection " + std::to_string(i) + " used twice");
      }
      const Detection& d = detections[i];
      const auto bit = lt.tube.boxes.find(d.frame_index);
      if (bit == lt.tube.boxes.end() || !(bit->second == d.box)) {
        complain(t, "box at frame " + std::to_string(d.frame_index) +
                        " does not match its detection");
      }
      if (interpolated.count(d.frame_index)) {
        complain(t, "frame " + std::to_string(d.frame_index) +
                        " is both detection-backed and interpolated");
      }
      real_frames.push_back(d.frame_index);
    }

    // Detection-backed and interpolated frames must tile the segment.
    if (real_frames.size() + interpolated.size() != lt.tube.boxes.size()) {
      complain(t, "frames are not split between detections and interpolation");
    }

    for (std::size_t k = 0; k + 1 < real_frames.size(); ++k) {
      const std::int64_t a = real_frames[k];
      const std::int64_t b = real_frames[k + 1];
      if (b <= a) {
        complain(t, "detection frames are not strictly increasing");
        continue;
      }
      if (b - a - 1 > params.max_gap_frames) {
        complain(t, "gap before frame " + std::to_string(b) + " exceeds max_gap_frames");
      }
      const BBox& box_a = lt.tube.boxes.at(a);
      const BBox& box_b = lt.tube.boxes.at(b);
      if (plain_box_iou(box_a, box_b) < params.iou_continuity_threshold) {
        complain(t, "continuity below threshold between frames " + std::to_string(a) +
                        " and " + std::to_string(b));
      }
      // Bridged frames carry the linear interpolation of their endpoints.
      for (std::int64_t f = a + 1; f < b; ++f) {
        const double frac = static_cast<double>(f - a) / static_cast<double>(b - a);
        const BBox& got = lt.tube.boxes.at(f);
        const BBox want{box_a.x1 + (box_b.x1 - box_a.x1) * frac,
                        box_a.y1 + (box_b.y1 - box_a.y1) * frac,
                        box_a.x2 + (box_b.x2 - box_a.x2) * frac,
                        box_a.y2 + (box_b.y2 - box_a.y2) * frac};
        const double tol = 1e-9;
        if (std::abs(got.x1 - want.x1) > tol || std::abs(got.y1 - want.y1) > tol ||
            std::abs(got.x2 - want.x2) > tol || std::abs(got.y2 - want.y2) > tol) {
          complain(t, "frame " + std::to_string(f) + " is not the interpolation of its neighbors");
        }
        if (!interpolated.count(f)) {
          complain(t, "frame " + std::to_string(f) + " missing from interpolated_frames");
        }
      }
    }

    double score_sum = 0.0;
    for (const std::size_t i : lt.detection_indices) {
      if (i < detections.size()) score_sum += detections[i].score;
    }
    if (!lt.detection_indices.empty()) {
      const double mean = score_sum / static_cast<double>(lt.detection_indices.size());
      if (std::abs(mean - lt.mean_score) > 1e-12) complain(t, "mean score mismatch");
    }
  }
  return problems;
}

}  // namespace stvg::oracle
