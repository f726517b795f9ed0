#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "stvgkit/metrics.hpp"
#include "stvgkit/rng.hpp"
#include "stvgkit/synth.hpp"
#include "stvgkit/tubes.hpp"

using namespace stvg;

TEST_CASE("the rng stream is pinned") {
  Rng rng(42);
  CHECK(rng.uniform() == 0.75515553295453897);
  CHECK(rng.uniform() == 0.63903139385469743);
  CHECK(rng.uniform() == 0.7521452007480266);

  Rng bounds(7);
  for (int i = 0; i < 2000; ++i) {
    const double u = bounds.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const std::int64_t k = bounds.uniform_int(-3, 3);
    CHECK(k >= -3);
    CHECK(k <= 3);
  }
  CHECK(bounds.uniform_int(5, 5) == 5);
  CHECK_FALSE(bounds.chance(0.0));
  CHECK(bounds.chance(1.0));
}

TEST_CASE("uniform_int covers every value in a small range") {
  Rng rng(11);
  bool seen[5] = {};
  for (int i = 0; i < 500; ++i) seen[rng.uniform_int(0, 4)] = true;
  for (bool s : seen) CHECK(s);
}

TEST_CASE("synthesis is deterministic per seed") {
  SynthParams p;
  p.n_videos = 6;
  p.frames_per_video = 24;
  const SynthDataset first = synth_dataset(123, p);
  const SynthDataset second = synth_dataset(123, p);
  CHECK(first.gts == second.gts);
  CHECK(first.model_a == second.model_a);
  CHECK(first.model_b == second.model_b);
  CHECK(first.detections == second.detections);

  const SynthDataset other = synth_dataset(124, p);
  CHECK(first.gts != other.gts);
}

TEST_CASE("every synthesized record is structurally valid") {
  SynthParams p;
  p.n_videos = 8;
  p.frames_per_video = 30;
  p.detection_gap_period = 5;
  const SynthDataset ds = synth_dataset(99, p);

  REQUIRE(ds.gts.size() == 8);
  REQUIRE(ds.model_a.size() == 8);
  REQUIRE(ds.model_b.size() == 8);
  REQUIRE(ds.detections.size() == 8);

  for (const auto* split : {&ds.gts, &ds.model_a, &ds.model_b}) {
    for (const GroundingRecord& r : *split) {
      REQUIRE(r.has_tube());
      CHECK(validate_tube(r.tube()).empty());
      CHECK(r.segment->start_frame >= 0);
      CHECK(r.segment->end_frame < p.frames_per_video);
      for (const auto& [frame, box] : r.boxes) {
        CHECK(box.x1 >= 0.0);
        CHECK(box.y1 >= 0.0);
        CHECK(box.x2 <= p.frame_width);
        CHECK(box.y2 <= p.frame_height);
      }
      // Round trip through the line format.
      CHECK(record_from_json_line(record_to_json_line(r)) == r);
    }
  }

  for (const GroundingRecord& r : ds.detections) {
    CHECK_FALSE(r.has_tube());
    CHECK_FALSE(r.detections.empty());
    for (std::size_t i = 1; i < r.detections.size(); ++i) {
      CHECK(r.detections[i - 1].frame_index <= r.detections[i].frame_index);
    }
    for (const Detection& d : r.detections) {
      CHECK(d.score > 0.0);
      CHECK(d.score < 1.0);
      CHECK(box_valid(d.box));
    }
  }

  // The four splits agree on ids, in order.
  for (std::size_t i = 0; i < ds.gts.size(); ++i) {
    CHECK(ds.gts[i].video_id == ds.model_a[i].video_id);
    CHECK(ds.gts[i].video_id == ds.model_b[i].video_id);
    CHECK(ds.gts[i].video_id == ds.detections[i].video_id);
    CHECK_FALSE(ds.gts[i].query.empty());
  }
  CHECK(ds.gts[0].video_id != ds.gts[1].video_id);
}

TEST_CASE("zero noise reproduces the groundtruth exactly") {
  SynthParams p;
  p.n_videos = 5;
  p.frames_per_video = 20;
  p.spatial_noise_a = 0.0;
  p.spatial_noise_b = 0.0;
  p.temporal_jitter_a = 0;
  p.temporal_shift_b = 0.0;
  p.temporal_truncate_b = 0.0;
  const SynthDataset ds = synth_dataset(5, p);
  for (std::size_t i = 0; i < ds.gts.size(); ++i) {
    CHECK(ds.model_a[i].segment == ds.gts[i].segment);
    CHECK(ds.model_a[i].boxes == ds.gts[i].boxes);
    CHECK(ds.model_b[i].segment == ds.gts[i].segment);
    CHECK(ds.model_b[i].boxes == ds.gts[i].boxes);
    CHECK(viou(ds.model_a[i].tube(), ds.gts[i].tube()) == 1.0);
  }
}

TEST_CASE("model profiles separate temporal and spatial quality") {
  SynthParams p;
  p.n_videos = 40;
  const SynthDataset ds = synth_dataset(2024, p);
  double tiou_a = 0.0, tiou_b = 0.0, viou_a = 0.0, viou_b = 0.0;
  for (std::size_t i = 0; i < ds.gts.size(); ++i) {
    const Tube gt = ds.gts[i].tube();
    tiou_a += tiou(ds.model_a[i].segment.value(), gt.segment);
    tiou_b += tiou(ds.model_b[i].segment.value(), gt.segment);
    viou_a += viou(ds.model_a[i].tube(), gt);
    viou_b += viou(ds.model_b[i].tube(), gt);
  }
  // Model A localizes time better; model B draws boxes better per frame
  // of overlap, which its shifted segment then dilutes.
  CHECK(tiou_a / 40 > tiou_b / 40);
  CHECK(tiou_a / 40 > 0.9);
  CHECK(viou_b / 40 > viou_a / 40);
}

TEST_CASE("gap periods thin the target track") {
  SynthParams p;
  p.n_videos = 4;
  p.frames_per_video = 32;
  SynthParams gapped = p;
  gapped.detection_gap_period = 4;
  const SynthDataset dense = synth_dataset(31, p);
  const SynthDataset sparse = synth_dataset(31, gapped);
  for (std::size_t i = 0; i < dense.detections.size(); ++i) {
    CHECK(sparse.detections[i].detections.size() <
          dense.detections[i].detections.size());
  }
}

TEST_CASE("bad synthesis parameters are rejected") {
  SynthParams p;
  p.n_videos = 0;
  CHECK_THROWS_AS(synth_dataset(1, p), std::invalid_argument);
  p = {};
  p.frames_per_video = 1;
  CHECK_THROWS_AS(synth_dataset(1, p), std::invalid_argument);
  p = {};
  p.frame_width = 0.0;
  CHECK_THROWS_AS(synth_dataset(1, p), std::invalid_argument);
  p = {};
  p.spatial_noise_a = 1.5;
  CHECK_THROWS_AS(synth_dataset(1, p), std::invalid_argument);
  p = {};
  p.temporal_shift_b = -0.1;
  CHECK_THROWS_AS(synth_dataset(1, p), std::invalid_argument);
  p = {};
  p.temporal_jitter_a = -1;
  CHECK_THROWS_AS(synth_dataset(1, p), std::invalid_argument);
  p = {};
  p.detection_gap_period = -2;
  CHECK_THROWS_AS(synth_dataset(1, p), std::invalid_argument);
}
