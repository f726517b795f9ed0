#pragma once

#include <cstdint>
#include <vector>

#include "stvgkit/records.hpp"

namespace stvg {

// Knobs of the synthetic dataset generator. The defaults produce the
// standard benchmark profile: model A nails the temporal extent but
// jitters its boxes, model B draws accurate boxes over a shifted and
// truncated segment, and the detection stream carries one target track
// plus one distractor track per video.
struct SynthParams {
  std::int64_t n_videos = 200;
  std::int64_t frames_per_video = 48;
  double frame_width = 640.0;
  double frame_height = 360.0;
  // Box jitter of each model, as a fraction of box size.
  double spatial_noise_a = 0.35;
  double spatial_noise_b = 0.04;
  // Largest shift of model A's segment endpoints, in frames.
  std::int64_t temporal_jitter_a = 1;
  // Shift and truncation of model B's segment, as fractions of the
  // groundtruth length.
  double temporal_shift_b = 0.35;
  double temporal_truncate_b = 0.30;
  // Half-width of the uniform noise on detection scores.
  double detection_score_noise = 0.15;
  // When positive, every k-th frame of the target track has no detection.
  std::int64_t detection_gap_period = 0;
};

struct SynthDataset {
  std::vector<GroundingRecord> gts;
  std::vector<GroundingRecord> model_a;
  std::vector<GroundingRecord> model_b;
  std::vector<GroundingRecord> detections;
};

// Deterministic: the same seed and params produce bit-identical records.
// With all noise, shift, truncation, and jitter set to zero, both models
// reproduce the groundtruth exactly. Throws std::invalid_argument on
// nonpositive sizes or out-of-range noise fractions.
SynthDataset synth_dataset(std::uint64_t seed, const SynthParams& params = {});

}  // namespace stvg
