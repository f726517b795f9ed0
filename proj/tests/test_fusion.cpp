#include <stdexcept>

#include "doctest.h"
#include "stvgkit/errors.hpp"
#include "stvgkit/fusion.hpp"
#include "stvgkit/metrics.hpp"
#include "stvgkit/rng.hpp"

using namespace stvg;

namespace {

Tube constant_tube(std::int64_t start, std::int64_t end, const BBox& box,
                   const std::string& source = "") {
  Tube t;
  t.video_id = "v";
  t.segment = {start, end};
  t.source = source;
  for (std::int64_t f = start; f <= end; ++f) t.boxes[f] = box;
  return t;
}

}  // namespace

TEST_CASE("full spatial coverage copies boxes verbatim") {
  const Tube temporal = constant_tube(5, 9, BBox{0, 0, 1, 1}, "temp");
  Tube spatial = constant_tube(4, 11, BBox{2, 2, 8, 8}, "spat");
  spatial.boxes[7] = BBox{3, 3, 9, 9};

  for (const GapPolicy policy : {GapPolicy::Nearest, GapPolicy::Interpolate,
                                 GapPolicy::Drop, GapPolicy::Fail}) {
    const Tube fused = fuse(temporal, spatial, policy);
    CHECK(fused.segment == temporal.segment);
    CHECK(fused.boxes.size() == 5);
    for (std::int64_t f = 5; f <= 9; ++f) CHECK(fused.boxes.at(f) == spatial.boxes.at(f));
    CHECK_FALSE(fused.partial);
    CHECK(fused.source == "temp+spat");
    CHECK(fused.meta.at("fusion_policy") == gap_policy_name(policy));
    CHECK(fused.meta.at("temporal_source") == "temp");
    CHECK(fused.meta.at("spatial_source") == "spat");
  }
}

TEST_CASE("nearest extends the closest covered box") {
  const Tube temporal = constant_tube(0, 5, BBox{0, 0, 1, 1});
  Tube spatial = constant_tube(3, 8, BBox{2, 2, 8, 8});
  spatial.boxes[3] = BBox{1, 1, 4, 4};

  const Tube fused = fuse(temporal, spatial, GapPolicy::Nearest);
  for (std::int64_t f = 0; f <= 2; ++f) CHECK(fused.boxes.at(f) == spatial.boxes.at(3));
  for (std::int64_t f = 3; f <= 5; ++f) CHECK(fused.boxes.at(f) == spatial.boxes.at(f));
  CHECK(tube_ok(fused));
}

TEST_CASE("nearest resolves equidistant gaps to the earlier frame") {
  Tube spatial = constant_tube(0, 0, BBox{0, 0, 2, 2});
  spatial.segment = {0, 4};
  spatial.boxes[4] = BBox{10, 10, 12, 12};
  spatial.partial = true;
  CHECK(tube_ok(spatial));

  const Tube temporal = constant_tube(0, 4, BBox{0, 0, 1, 1});
  const Tube fused = fuse(temporal, spatial, GapPolicy::Nearest);
  // Frame 2 sits two frames from both covered frames; the earlier one wins.
  CHECK(fused.boxes.at(1) == spatial.boxes.at(0));
  CHECK(fused.boxes.at(2) == spatial.boxes.at(0));
  CHECK(fused.boxes.at(3) == spatial.boxes.at(4));
}

TEST_CASE("interpolate lerps between neighbors and copies past the ends") {
  Tube spatial = constant_tube(2, 2, BBox{0, 0, 2, 2});
  spatial.segment = {2, 6};
  spatial.boxes[6] = BBox{4, 8, 10, 14};
  spatial.partial = true;

  const Tube temporal = constant_tube(0, 8, BBox{0, 0, 1, 1});
  const Tube fused = fuse(temporal, spatial, GapPolicy::Interpolate);
  CHECK(fused.boxes.at(0) == spatial.boxes.at(2));
  CHECK(fused.boxes.at(1) == spatial.boxes.at(2));
  CHECK(fused.boxes.at(4) == BBox{2, 4, 6, 8});
  CHECK(fused.boxes.at(3) == BBox{1, 2, 4, 5});
  CHECK(fused.boxes.at(7) == spatial.boxes.at(6));
  CHECK(fused.boxes.at(8) == spatial.boxes.at(6));
}

TEST_CASE("drop leaves gaps and flags empty results degenerate") {
  const Tube temporal = constant_tube(0, 5, BBox{0, 0, 1, 1});
  const Tube spatial = constant_tube(4, 9, BBox{2, 2, 8, 8});

  const Tube fused = fuse(temporal, spatial, GapPolicy::Drop);
  CHECK(fused.partial);
  CHECK(fused.boxes.size() == 2);
  CHECK(tube_ok(fused));
  CHECK_FALSE(fused.degenerate());

  const Tube disjoint_spatial = constant_tube(20, 25, BBox{2, 2, 8, 8});
  const Tube empty = fuse(temporal, disjoint_spatial, GapPolicy::Drop);
  CHECK(empty.degenerate());
  CHECK(empty.meta.at("degenerate") == "true");
  const Tube gt = constant_tube(0, 5, BBox{2, 2, 8, 8});
  CHECK(viou(empty, gt) == 0.0);
}

TEST_CASE("fail raises on the first uncovered frame") {
  const Tube temporal = constant_tube(0, 5, BBox{0, 0, 1, 1});
  const Tube spatial = constant_tube(2, 9, BBox{2, 2, 8, 8});
  CHECK_THROWS_AS(fuse(temporal, spatial, GapPolicy::Fail), ValidationError);
}

TEST_CASE("fusing tubes from different videos is rejected") {
  Tube a = constant_tube(0, 5, BBox{0, 0, 1, 1});
  Tube b = constant_tube(0, 5, BBox{0, 0, 1, 1});
  b.video_id = "w";
  CHECK_THROWS_AS(fuse(a, b, GapPolicy::Nearest), std::invalid_argument);
}

TEST_CASE("fusion is idempotent and fuse_reverse is the same function") {
  const Tube t = constant_tube(3, 12, BBox{1, 1, 7, 7}, "m");
  for (const GapPolicy policy : {GapPolicy::Nearest, GapPolicy::Interpolate,
                                 GapPolicy::Drop, GapPolicy::Fail}) {
    const Tube self = fuse(t, t, policy);
    CHECK(self.segment == t.segment);
    CHECK(self.boxes == t.boxes);
    CHECK(fuse_reverse(t, t, policy).boxes == self.boxes);
  }

  const Tube spatial = constant_tube(0, 20, BBox{2, 2, 8, 8}, "s");
  CHECK(fuse(t, spatial, GapPolicy::Nearest) ==
        fuse_reverse(t, spatial, GapPolicy::Nearest));
}

TEST_CASE("fusion keeps the temporal source's tiou against any groundtruth") {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const std::int64_t ts = rng.uniform_int(0, 30);
    const Tube temporal = constant_tube(ts, ts + rng.uniform_int(0, 12), BBox{0, 0, 4, 4});
    const std::int64_t ss = rng.uniform_int(0, 30);
    const Tube spatial = constant_tube(ss, ss + rng.uniform_int(0, 12), BBox{1, 1, 5, 5});
    const Segment gt{rng.uniform_int(0, 30), rng.uniform_int(30, 50)};

    const Tube fused = fuse(temporal, spatial, GapPolicy::Nearest);
    CHECK(tiou(fused.segment, gt) == tiou(temporal.segment, gt));
  }
}

TEST_CASE("gap policy names round-trip") {
  for (const GapPolicy policy : {GapPolicy::Nearest, GapPolicy::Interpolate,
                                 GapPolicy::Drop, GapPolicy::Fail}) {
    CHECK(parse_gap_policy(gap_policy_name(policy)) == policy);
  }
  CHECK_THROWS_AS(parse_gap_policy("sideways"), std::invalid_argument);
}
