#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stvgkit/geometry.hpp"
#include "stvgkit/tubes.hpp"

namespace stvg {

// One detector output on one frame.
struct Detection {
  std::int64_t frame_index = 0;
  BBox box;
  double score = 0.0;

  bool operator==(const Detection&) const = default;
};

// Parameters of the greedy score-and-overlap linker.
struct LinkParams {
  // Minimum IoU between a tube's last box and a candidate detection.
  double iou_continuity_threshold = 0.5;
  // Weight of that IoU in the extension objective score + w * IoU.
  double score_weight = 1.0;
  // Longest run of frames without a qualifying detection that may be
  // bridged by linear interpolation.
  std::int64_t max_gap_frames = 1;
  // Tubes spanning fewer frames than this are discarded after building.
  std::int64_t min_tube_length = 5;
  // Cap on built tubes, counting ones later discarded as too short.
  std::int64_t max_tubes = 10;
};

struct LinkedTube {
  Tube tube;
  // Arithmetic mean of the linked detections' scores; interpolated frames
  // do not participate.
  double mean_score = 0.0;
  std::vector<std::int64_t> interpolated_frames;
  // Indices into the input detection list, in extension order.
  std::vector<std::size_t> detection_indices;

  bool operator==(const LinkedTube&) const = default;
};

// Greedy forward linker. Seeds a tube at the highest-score unused detection
// of the earliest frame that still has one, extends it frame by frame with
// the unused detection maximizing score + score_weight * IoU(last box,
// candidate) among those meeting the continuity threshold, bridges up to
// max_gap_frames frames by linear interpolation, and repeats until
// max_tubes tubes were built or no detections remain. Ties go to the lower
// frame, then the higher score, then input order. Detections must be sorted
// by frame_index; each is used by at most one tube. An empty input yields
// an empty output.
std::vector<LinkedTube> link_detections(const std::vector<Detection>& detections,
                                        const LinkParams& params = {},
                                        const std::string& video_id = {});

// Mean score of the detections linked into a tube. Throws
// std::invalid_argument on an empty list.
double tube_score(const Tube& tube, const std::vector<Detection>& linked_detections);

}  // namespace stvg
