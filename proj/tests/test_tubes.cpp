#include <stdexcept>

#include "doctest.h"
#include "stvgkit/errors.hpp"
#include "stvgkit/rng.hpp"
#include "stvgkit/tubes.hpp"

using namespace stvg;

namespace {

Tube make_tube(std::int64_t start, std::int64_t end, const BBox& box,
               const std::string& id = "v") {
  Tube t;
  t.video_id = id;
  t.segment = {start, end};
  for (std::int64_t f = start; f <= end; ++f) t.boxes[f] = box;
  return t;
}

}  // namespace

TEST_CASE("segment basics") {
  CHECK(segment_valid(Segment{3, 5}));
  CHECK(segment_valid(Segment{5, 5}));
  CHECK_FALSE(segment_valid(Segment{5, 3}));
  CHECK_FALSE(segment_valid(Segment{-1, 3}));
  CHECK(segment_frame_count(Segment{5, 5}) == 1);
  CHECK(segment_frame_count(Segment{10, 25}) == 16);
  CHECK(segment_frame_count(Segment{0, 19}) == 20);
  CHECK_THROWS_AS(segment_frame_count(Segment{5, 3}), std::invalid_argument);
  CHECK(Segment{3, 5}.contains(4));
  CHECK_FALSE(Segment{3, 5}.contains(6));
}

TEST_CASE("validate_tube finds each violation kind") {
  const BBox box{0, 0, 10, 10};
  CHECK(tube_ok(make_tube(3, 5, box)));

  Tube missing = make_tube(3, 5, box);
  missing.boxes.erase(4);
  const auto v1 = validate_tube(missing);
  REQUIRE(v1.size() == 1);
  CHECK(v1[0].kind == TubeViolation::Kind::MissingFrame);
  CHECK(v1[0].frame == 4);

  Tube extra = make_tube(3, 5, box);
  extra.boxes[9] = box;
  const auto v2 = validate_tube(extra);
  REQUIRE(v2.size() == 1);
  CHECK(v2[0].kind == TubeViolation::Kind::ExtraFrame);

  Tube bad = make_tube(3, 5, box);
  bad.boxes[4] = BBox{5, 0, 1, 10};
  const auto v3 = validate_tube(bad);
  REQUIRE(v3.size() == 1);
  CHECK(v3[0].kind == TubeViolation::Kind::BadBox);

  Tube upside_down = make_tube(3, 5, box);
  upside_down.segment = {5, 3};
  CHECK_FALSE(tube_ok(upside_down));

  CHECK_THROWS_AS(require_valid_tube(missing, "test"), ValidationError);
}

TEST_CASE("partial tubes may omit frames but not invent them") {
  const BBox box{0, 0, 10, 10};
  Tube partial = make_tube(3, 7, box);
  partial.boxes.erase(4);
  partial.boxes.erase(6);
  partial.partial = true;
  CHECK(tube_ok(partial));

  partial.boxes[11] = box;
  CHECK_FALSE(tube_ok(partial));
}

TEST_CASE("split_into_clips partitions evenly") {
  const auto even = split_into_clips(Segment{0, 31}, 16);
  REQUIRE(even.size() == 16);
  for (int i = 0; i < 16; ++i) {
    CHECK(even[i].first_frame == 2 * i);
    CHECK(even[i].last_frame == 2 * i + 1);
    CHECK(even[i].frame_count() == 2);
  }

  const auto unit = split_into_clips(Segment{0, 19}, 20);
  REQUIRE(unit.size() == 20);
  for (int i = 0; i < 20; ++i) CHECK(unit[i].frame_count() == 1);
}

TEST_CASE("split_into_clips flags trailing empty clips") {
  const auto ranges = split_into_clips(Segment{0, 9}, 16);
  REQUIRE(ranges.size() == 16);
  for (int i = 0; i < 10; ++i) {
    CHECK(ranges[i].frame_count() == 1);
    CHECK(ranges[i].first_frame == i);
  }
  for (int i = 10; i < 16; ++i) CHECK(ranges[i].empty());
  CHECK_THROWS_AS(split_into_clips(Segment{0, 9}, 0), std::invalid_argument);
}

TEST_CASE("split_into_clips sends the remainder to the earliest clips") {
  const auto ranges = split_into_clips(Segment{0, 9}, 3);
  REQUIRE(ranges.size() == 3);
  CHECK(ranges[0].frame_count() == 4);
  CHECK(ranges[1].frame_count() == 3);
  CHECK(ranges[2].frame_count() == 3);
}

TEST_CASE("split_into_clips concatenates back to the segment") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t start = rng.uniform_int(0, 50);
    const std::int64_t len = rng.uniform_int(1, 80);
    const int n = static_cast<int>(rng.uniform_int(1, 24));
    const Segment seg{start, start + len - 1};
    const auto ranges = split_into_clips(seg, n);
    REQUIRE(static_cast<int>(ranges.size()) == n);
    std::int64_t next = seg.start_frame;
    for (const auto& r : ranges) {
      if (r.empty()) continue;
      CHECK(r.first_frame == next);
      next = r.last_frame + 1;
    }
    CHECK(next == seg.end_frame + 1);
  }
}

TEST_CASE("crop_to_segment keeps covered frames and flags the rest") {
  const BBox box{0, 0, 10, 10};
  const Tube t = make_tube(10, 19, box);

  const Tube inner = crop_to_segment(t, Segment{12, 15});
  CHECK(inner.segment == Segment{12, 15});
  CHECK(inner.boxes.size() == 4);
  CHECK_FALSE(inner.partial);
  CHECK(tube_ok(inner));

  const Tube hanging = crop_to_segment(t, Segment{15, 25});
  CHECK(hanging.segment == Segment{15, 25});
  CHECK(hanging.boxes.size() == 5);
  CHECK(hanging.partial);
  CHECK(tube_ok(hanging));
}
