#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "stvgkit/linking.hpp"
#include "stvgkit/oracle.hpp"
#include "stvgkit/rng.hpp"

using namespace stvg;

namespace {

// Two spatially disjoint constant tracks over [0, n_frames).
std::vector<Detection> two_tracks(std::int64_t n_frames, double score_a = 0.9,
                                  double score_b = 0.6) {
  std::vector<Detection> dets;
  for (std::int64_t f = 0; f < n_frames; ++f) {
    dets.push_back({f, BBox{0, 0, 10, 10}, score_a});
    dets.push_back({f, BBox{100, 100, 110, 110}, score_b});
  }
  return dets;
}

}  // namespace

TEST_CASE("single constant track is recovered as one tube") {
  std::vector<Detection> dets;
  for (std::int64_t f = 0; f < 10; ++f) dets.push_back({f, BBox{5, 5, 15, 15}, 0.8});
  const auto tubes = link_detections(dets);
  REQUIRE(tubes.size() == 1);
  CHECK(tubes[0].tube.segment == Segment{0, 9});
  CHECK(tubes[0].mean_score == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(tubes[0].interpolated_frames.empty());
  CHECK(tube_ok(tubes[0].tube));
  CHECK(oracle::oracle_link_check(tubes, dets, LinkParams{}).empty());
}

TEST_CASE("two disjoint tracks come back as two exact tubes") {
  const auto dets = two_tracks(10);
  const auto tubes = link_detections(dets);
  REQUIRE(tubes.size() == 2);
  // The higher-score track seeds first.
  CHECK(tubes[0].tube.boxes.at(0) == BBox{0, 0, 10, 10});
  CHECK(tubes[1].tube.boxes.at(0) == BBox{100, 100, 110, 110});
  for (std::int64_t f = 0; f < 10; ++f) {
    CHECK(tubes[0].tube.boxes.at(f) == BBox{0, 0, 10, 10});
    CHECK(tubes[1].tube.boxes.at(f) == BBox{100, 100, 110, 110});
  }
  CHECK(oracle::oracle_link_check(tubes, dets, LinkParams{}).empty());
}

TEST_CASE("a single missing frame is bridged by interpolation") {
  std::vector<Detection> dets;
  for (std::int64_t f = 0; f < 10; ++f) {
    if (f == 4) continue;
    const double shift = static_cast<double>(f);
    dets.push_back({f, BBox{shift, 0, shift + 10, 10}, 0.8});
  }
  const auto tubes = link_detections(dets);
  REQUIRE(tubes.size() == 1);
  CHECK(tubes[0].tube.segment == Segment{0, 9});
  REQUIRE(tubes[0].interpolated_frames == std::vector<std::int64_t>{4});
  CHECK(tubes[0].tube.boxes.at(4) == BBox{4, 0, 14, 10});
  // Interpolated frames do not contribute to the mean score.
  CHECK(tubes[0].mean_score == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(oracle::oracle_link_check(tubes, dets, LinkParams{}).empty());
}

TEST_CASE("gaps beyond max_gap_frames split the track") {
  std::vector<Detection> dets;
  for (std::int64_t f = 0; f < 16; ++f) {
    if (f >= 6 && f <= 9) continue;
    dets.push_back({f, BBox{0, 0, 10, 10}, 0.8});
  }
  LinkParams params;
  params.max_gap_frames = 2;
  params.min_tube_length = 3;
  const auto tubes = link_detections(dets, params);
  REQUIRE(tubes.size() == 2);
  CHECK(tubes[0].tube.segment == Segment{0, 5});
  CHECK(tubes[1].tube.segment == Segment{10, 15});
  CHECK(oracle::oracle_link_check(tubes, dets, params).empty());
}

TEST_CASE("short tubes are discarded but still count toward max_tubes") {
  std::vector<Detection> dets;
  // A 3-frame burst (too short) with the highest scores, then a long track.
  for (std::int64_t f = 0; f < 3; ++f) dets.push_back({f, BBox{50, 50, 60, 60}, 0.99});
  for (std::int64_t f = 0; f < 12; ++f) dets.push_back({f, BBox{0, 0, 10, 10}, 0.5});
  std::sort(dets.begin(), dets.end(), [](const Detection& a, const Detection& b) {
    return a.frame_index < b.frame_index;
  });

  LinkParams params;
  params.min_tube_length = 5;
  SUBCASE("with room for both, only the long tube survives") {
    const auto tubes = link_detections(dets, params);
    REQUIRE(tubes.size() == 1);
    CHECK(tubes[0].tube.segment == Segment{0, 11});
  }
  SUBCASE("a cap of one is consumed by the discarded short tube") {
    params.max_tubes = 1;
    CHECK(link_detections(dets, params).empty());
  }
}

TEST_CASE("extension prefers the blended objective, then score, then order") {
  // Last box (0,0,10,10); two candidates on the next frame.
  std::vector<Detection> dets;
  dets.push_back({0, BBox{0, 0, 10, 10}, 0.9});
  // IoU with seed: high for the first, lower for the second.
  dets.push_back({1, BBox{0, 0, 10, 10}, 0.5});
  dets.push_back({1, BBox{3, 0, 13, 10}, 0.62});

  LinkParams params;
  params.min_tube_length = 1;
  params.score_weight = 1.0;
  // Objectives: 0.5 + 1.0 vs 0.62 + 7/13; the exact-overlap box wins.
  auto tubes = link_detections(dets, params);
  CHECK(tubes[0].tube.boxes.at(1) == BBox{0, 0, 10, 10});

  // With no IoU weight the higher score wins.
  params.score_weight = 0.0;
  tubes = link_detections(dets, params);
  CHECK(tubes[0].tube.boxes.at(1) == BBox{3, 0, 13, 10});
}

TEST_CASE("input must be sorted by frame") {
  std::vector<Detection> dets{{5, BBox{0, 0, 1, 1}, 0.5}, {3, BBox{0, 0, 1, 1}, 0.5}};
  CHECK_THROWS_AS(link_detections(dets), std::invalid_argument);
}

TEST_CASE("empty input yields empty output") {
  CHECK(link_detections({}).empty());
}

TEST_CASE("bad parameters are rejected") {
  const auto dets = two_tracks(8);
  LinkParams params;
  params.iou_continuity_threshold = 1.5;
  CHECK_THROWS_AS(link_detections(dets, params), std::invalid_argument);
  params = {};
  params.min_tube_length = 0;
  CHECK_THROWS_AS(link_detections(dets, params), std::invalid_argument);
  params = {};
  params.max_tubes = 0;
  CHECK_THROWS_AS(link_detections(dets, params), std::invalid_argument);
}

TEST_CASE("linking is deterministic and oracle-clean on random scenes") {
  Rng rng(31);
  LinkParams params;
  params.min_tube_length = 2;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Detection> dets;
    const std::int64_t frames = rng.uniform_int(4, 30);
    for (std::int64_t f = 0; f < frames; ++f) {
      const std::int64_t count = rng.uniform_int(0, 3);
      for (std::int64_t c = 0; c < count; ++c) {
        const double x = rng.uniform(0.0, 60.0), y = rng.uniform(0.0, 60.0);
        dets.push_back({f, BBox{x, y, x + rng.uniform(5.0, 20.0), y + rng.uniform(5.0, 20.0)},
                        rng.uniform(0.05, 1.0)});
      }
    }
    const auto first = link_detections(dets, params, "scene");
    const auto second = link_detections(dets, params, "scene");
    CHECK(first == second);
    const auto problems = oracle::oracle_link_check(first, dets, params);
    CHECK_MESSAGE(problems.empty(), trial, ": ", problems.empty() ? "" : problems.front());
  }
}
