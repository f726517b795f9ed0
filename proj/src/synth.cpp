#include "stvgkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "stvgkit/rng.hpp"

namespace stvg {

namespace {

void require_valid_params(const SynthParams& p) {
  if (p.n_videos < 1) throw std::invalid_argument("n_videos must be at least 1");
  if (p.frames_per_video < 2) throw std::invalid_argument("frames_per_video must be at least 2");
  if (p.frame_width <= 0.0 || p.frame_height <= 0.0) {
    throw std::invalid_argument("frame dimensions must be positive");
  }
  for (const double noise : {p.spatial_noise_a, p.spatial_noise_b, p.temporal_shift_b,
                             p.temporal_truncate_b, p.detection_score_noise}) {
    if (!(noise >= 0.0 && noise <= 1.0)) {
      throw std::invalid_argument("noise fractions must lie in [0, 1]");
    }
  }
  if (p.temporal_jitter_a < 0) throw std::invalid_argument("temporal_jitter_a must be >= 0");
  if (p.detection_gap_period < 0) {
    throw std::invalid_argument("detection_gap_period must be >= 0");
  }
}

std::string video_name(std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "synth-%05lld", static_cast<long long>(index));
  return buf;
}

// Smooth random-walk track across the whole video: the box drifts a few
// pixels per frame and slowly changes size, clamped to the frame.
std::vector<BBox> random_walk(Rng& rng, const SynthParams& p) {
  std::vector<BBox> out;
  out.reserve(static_cast<std::size_t>(p.frames_per_video));
  double w = rng.uniform(0.10, 0.25) * p.frame_width;
  double h = rng.uniform(0.20, 0.45) * p.frame_height;
  double cx = rng.uniform(0.25, 0.75) * p.frame_width;
  double cy = rng.uniform(0.30, 0.70) * p.frame_height;
  for (std::int64_t f = 0; f < p.frames_per_video; ++f) {
    cx += rng.uniform(-2.5, 2.5);
    cy += rng.uniform(-2.0, 2.0);
    w *= 1.0 + rng.uniform(-0.02, 0.02);
    h *= 1.0 + rng.uniform(-0.02, 0.02);
    w = std::clamp(w, 4.0, p.frame_width);
    h = std::clamp(h, 4.0, p.frame_height);
    cx = std::clamp(cx, w / 2.0, p.frame_width - w / 2.0);
    cy = std::clamp(cy, h / 2.0, p.frame_height - h / 2.0);
    out.push_back(BBox{cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0});
  }
  return out;
}

// Center shift up to `noise` of the box size per axis plus a mild rescale,
// clamped to the frame. noise == 0 returns the box unchanged (the draws
// still advance the stream).
BBox jitter_box(Rng& rng, const BBox& b, double noise, const SynthParams& p) {
  const double w = b.x2 - b.x1;
  const double h = b.y2 - b.y1;
  const double dx = w * noise * rng.uniform(-1.0, 1.0);
  const double dy = h * noise * rng.uniform(-1.0, 1.0);
  const double scale = 1.0 + 0.5 * noise * rng.uniform(-1.0, 1.0);
  // Rebuilding from center and size is not bit-exact, so the unjittered box
  // is returned as is.
  if (noise == 0.0) return b;
  double nw = std::clamp(w * scale, 1.0, p.frame_width);
  double nh = std::clamp(h * scale, 1.0, p.frame_height);
  double cx = std::clamp((b.x1 + b.x2) / 2.0 + dx, nw / 2.0, p.frame_width - nw / 2.0);
  double cy = std::clamp((b.y1 + b.y2) / 2.0 + dy, nh / 2.0, p.frame_height - nh / 2.0);
  return BBox{cx - nw / 2.0, cy - nh / 2.0, cx + nw / 2.0, cy + nh / 2.0};
}

// Box of the walk at frame f, read at the nearest covered frame when f
// falls outside the walk's segment.
const BBox& walk_at(const std::vector<BBox>& walk, std::int64_t f) {
  const auto last = static_cast<std::int64_t>(walk.size()) - 1;
  return walk[static_cast<std::size_t>(std::clamp(f, std::int64_t{0}, last))];
}

}  // namespace

SynthDataset synth_dataset(std::uint64_t seed, const SynthParams& params) {
  require_valid_params(params);
  Rng rng(seed);
  SynthDataset out;
  const std::int64_t frames = params.frames_per_video;

  for (std::int64_t v = 0; v < params.n_videos; ++v) {
    const std::string id = video_name(v);
    const std::string query = "the person being tracked in " + id;

    // Groundtruth: a segment covering 40 to 80 percent of the video with a
    // random-walk box.
    const std::int64_t min_len = std::max<std::int64_t>(1, frames * 2 / 5);
    const std::int64_t max_len = std::max<std::int64_t>(min_len, frames * 4 / 5);
    const std::int64_t gt_len = rng.uniform_int(min_len, max_len);
    const std::int64_t gt_start = rng.uniform_int(0, frames - gt_len);
    const Segment gt_segment{gt_start, gt_start + gt_len - 1};
    const std::vector<BBox> walk = random_walk(rng, params);

    Tube gt;
    gt.video_id = id;
    gt.query = query;
    gt.segment = gt_segment;
    gt.source = "gt";
    for (std::int64_t f = gt_segment.start_frame; f <= gt_segment.end_frame; ++f) {
      gt.boxes[f] = walk_at(walk, f);
    }
    out.gts.push_back(GroundingRecord::from_tube(gt));

    // Model A: the right frames, noisy boxes.
    Tube a;
    a.video_id = id;
    a.query = query;
    a.source = "model_a";
    const std::int64_t jit = params.temporal_jitter_a;
    std::int64_t a_start = gt_segment.start_frame;
    std::int64_t a_end = gt_segment.end_frame;
    if (jit > 0) {
      a_start = std::clamp(a_start + rng.uniform_int(-jit, jit), std::int64_t{0}, frames - 1);
      a_end = std::clamp(a_end + rng.uniform_int(-jit, jit), std::int64_t{0}, frames - 1);
      if (a_end < a_start) a_end = a_start;
    }
    a.segment = {a_start, a_end};
    for (std::int64_t f = a_start; f <= a_end; ++f) {
      a.boxes[f] = jitter_box(rng, walk_at(walk, f), params.spatial_noise_a, params);
    }
    out.model_a.push_back(GroundingRecord::from_tube(a));

    // Model B: accurate boxes over a shifted, truncated segment.
    const auto shift = static_cast<std::int64_t>(std::llround(
        static_cast<double>(gt_len) * params.temporal_shift_b * rng.uniform(-1.0, 1.0)));
    const auto cut = static_cast<std::int64_t>(std::llround(
        static_cast<double>(gt_len) * params.temporal_truncate_b * rng.uniform(0.0, 1.0)));
    const std::int64_t b_len = std::max<std::int64_t>(1, gt_len - cut);
    const std::int64_t b_start =
        std::clamp(gt_segment.start_frame + shift, std::int64_t{0}, frames - b_len);
    Tube b;
    b.video_id = id;
    b.query = query;
    b.source = "model_b";
    b.segment = {b_start, b_start + b_len - 1};
    for (std::int64_t f = b.segment.start_frame; f <= b.segment.end_frame; ++f) {
      b.boxes[f] = jitter_box(rng, walk_at(walk, f), params.spatial_noise_b, params);
    }
    out.model_b.push_back(GroundingRecord::from_tube(b));

    // Detection stream: the target track over the groundtruth segment
    // (minus periodic gaps) plus a distractor track over the whole video.
    GroundingRecord dets;
    dets.video_id = id;
    dets.query = query;
    dets.source = "detector";
    const std::vector<BBox> distractor = random_walk(rng, params);
    for (std::int64_t f = 0; f < frames; ++f) {
      if (gt_segment.contains(f)) {
        const bool gapped =
            params.detection_gap_period > 0 &&
            (f - gt_segment.start_frame) % params.detection_gap_period ==
                params.detection_gap_period - 1;
        const BBox box = jitter_box(rng, walk_at(walk, f), params.spatial_noise_b, params);
        const double score = std::clamp(
            0.80 + params.detection_score_noise * rng.uniform(-1.0, 1.0), 0.05, 0.99);
        if (!gapped) dets.detections.push_back({f, box, score});
      }
      const double score = std::clamp(
          0.50 + params.detection_score_noise * rng.uniform(-1.0, 1.0), 0.02, 0.95);
      dets.detections.push_back({f, walk_at(distractor, f), score});
    }
    out.detections.push_back(dets);
  }
  return out;
}

}  // namespace stvg
