#include <stdexcept>

#include "doctest.h"
#include "stvgkit/metrics.hpp"
#include "stvgkit/oracle.hpp"
#include "stvgkit/rng.hpp"

using namespace stvg;

namespace {

Tube random_tube(Rng& rng, const std::string& id) {
  Tube t;
  t.video_id = id;
  const std::int64_t start = rng.uniform_int(0, 40);
  t.segment = {start, start + rng.uniform_int(0, 20)};
  for (std::int64_t f = t.segment.start_frame; f <= t.segment.end_frame; ++f) {
    const double x1 = rng.uniform(0.0, 80.0), y1 = rng.uniform(0.0, 80.0);
    t.boxes[f] = BBox{x1, y1, x1 + rng.uniform(1.0, 40.0), y1 + rng.uniform(1.0, 40.0)};
  }
  return t;
}

Tube constant_tube(std::int64_t start, std::int64_t end, const BBox& box,
                   const std::string& id = "v") {
  Tube t;
  t.video_id = id;
  t.segment = {start, end};
  for (std::int64_t f = start; f <= end; ++f) t.boxes[f] = box;
  return t;
}

}  // namespace

TEST_CASE("tiou worked values") {
  CHECK(tiou(Segment{10, 25}, Segment{10, 25}) == 1.0);
  CHECK(tiou(Segment{15, 25}, Segment{10, 20}) == 0.375);
  CHECK(tiou(Segment{0, 4}, Segment{10, 14}) == 0.0);
  CHECK(oracle::oracle_tiou(Segment{15, 25}, Segment{10, 20}) == 0.375);
}

TEST_CASE("viou worked values") {
  const BBox box{0, 0, 10, 10};
  const Tube gt = constant_tube(0, 3, box);
  CHECK(viou(gt, gt) == 1.0);

  const Tube shifted = constant_tube(2, 5, box);
  CHECK(viou(shifted, gt) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const Tube disjoint = constant_tube(10, 13, box);
  CHECK(viou(disjoint, gt) == 0.0);

  const Tube other_video = constant_tube(0, 3, box, "w");
  CHECK_THROWS_AS(viou(other_video, gt), std::invalid_argument);
}

TEST_CASE("partial tubes score uncovered frames as zero overlap") {
  const BBox box{0, 0, 10, 10};
  const Tube gt = constant_tube(0, 5, box);
  Tube pred = constant_tube(0, 5, box);
  pred.boxes.erase(4);
  pred.boxes.erase(5);
  pred.partial = true;
  CHECK(viou(pred, gt) == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("viou and tiou match the enumeration oracles") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Tube a = random_tube(rng, "v"), b = random_tube(rng, "v");
    const double fast = viou(a, b);
    CHECK(fast == doctest::Approx(oracle::oracle_viou(a, b)).epsilon(1e-12));
    CHECK(tiou(a.segment, b.segment) ==
          doctest::Approx(oracle::oracle_tiou(a.segment, b.segment)).epsilon(1e-12));
    CHECK(fast <= tiou(a.segment, b.segment) + 1e-15);
    CHECK(fast == viou(b, a));
  }
}

TEST_CASE("padding with zero-overlap frames never increases viou") {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const Tube gt = random_tube(rng, "v");
    Tube pred = random_tube(rng, "v");
    const double before = viou(pred, gt);
    // Extend the prediction by frames whose boxes are far from everything.
    const std::int64_t pad = rng.uniform_int(1, 5);
    for (std::int64_t f = pred.segment.end_frame + 1; f <= pred.segment.end_frame + pad; ++f) {
      pred.boxes[f] = BBox{500, 500, 510, 510};
    }
    pred.segment.end_frame += pad;
    CHECK(viou(pred, gt) <= before + 1e-15);
  }
}

TEST_CASE("viou_at_r counting and strictness") {
  CHECK(viou_at_r({1.0, 1.0}, 0.5) == 1.0);
  CHECK(viou_at_r({0.2, 0.4, 0.6}, 0.3) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(viou_at_r({0.3}, 0.3) == 0.0);
  CHECK(viou_at_r({0.3}, 0.3, Comparison::NonStrict) == 1.0);
  CHECK_THROWS_AS(viou_at_r({}, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(viou_at_r({0.5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(viou_at_r({0.5}, 1.0), std::invalid_argument);
}

TEST_CASE("evaluate_dataset aggregates per video") {
  const BBox box{0, 0, 10, 10};
  const Tube gt1 = constant_tube(0, 9, box, "a");
  const Tube gt2 = constant_tube(0, 9, box, "b");

  SUBCASE("identical predictions score 1 everywhere") {
    const auto report = evaluate_dataset({gt1, gt2}, {gt1, gt2});
    CHECK(report.mean_viou == 1.0);
    CHECK(report.mean_tiou == 1.0);
    REQUIRE(report.viou_at.size() == 2);
    CHECK(report.viou_at[0].second == 1.0);
    CHECK(report.viou_at[1].second == 1.0);
    CHECK(report.n_missing == 0);
  }

  SUBCASE("missing prediction scores zero by default") {
    const auto report = evaluate_dataset({gt1}, {gt1, gt2});
    CHECK(report.mean_viou == 0.5);
    CHECK(report.mean_tiou == 0.5);
    CHECK(report.n_missing == 1);
    REQUIRE(report.per_video.size() == 2);
    CHECK(report.per_video[1].video_id == "b");
    CHECK(report.per_video[1].missing_prediction);
  }

  SUBCASE("skip policy drops unmatched groundtruth") {
    EvalOptions opt;
    opt.missing = MissingPolicy::Skip;
    const auto report = evaluate_dataset({gt1}, {gt1, gt2}, opt);
    CHECK(report.mean_viou == 1.0);
    CHECK(report.n_missing == 1);
    CHECK(report.per_video.size() == 1);
  }

  SUBCASE("duplicates are rejected") {
    CHECK_THROWS_AS(evaluate_dataset({gt1, gt1}, {gt1, gt2}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_dataset({gt1}, {gt1, gt1}), std::invalid_argument);
  }

  SUBCASE("unmatched predictions are counted, not scored") {
    const auto report = evaluate_dataset({gt1, gt2}, {gt1});
    CHECK(report.n_unmatched_preds == 1);
    CHECK(report.mean_viou == 1.0);
  }
}

TEST_CASE("report means equal the mean of per-video entries") {
  Rng rng(13);
  std::vector<Tube> preds, gts;
  for (int i = 0; i < 40; ++i) {
    const std::string id = "vid" + std::to_string(i);
    gts.push_back(random_tube(rng, id));
    if (i % 5 != 4) preds.push_back(random_tube(rng, id));
  }
  const auto report = evaluate_dataset(preds, gts);
  double vsum = 0.0, tsum = 0.0;
  for (const auto& pv : report.per_video) {
    vsum += pv.viou;
    tsum += pv.tiou;
  }
  CHECK(report.mean_viou ==
        doctest::Approx(vsum / report.per_video.size()).epsilon(1e-12));
  CHECK(report.mean_tiou ==
        doctest::Approx(tsum / report.per_video.size()).epsilon(1e-12));
  // Thresholds are antitone: a larger R never admits more videos.
  double prev = 1.0;
  for (const auto& [r, frac] : report.viou_at) {
    (void)r;
    CHECK(frac <= prev + 1e-15);
    prev = frac;
  }
}
