#pragma once

#include <string>
#include <vector>

#include "stvgkit/linking.hpp"
#include "stvgkit/moments.hpp"
#include "stvgkit/tubes.hpp"

// Brute-force reference implementations backing the test suites. These
// deliberately avoid the interval arithmetic and index math of the fast
// paths: temporal sets are materialized frame by frame, box overlap is
// recomputed from scratch, and candidate scans are exhaustive with explicit
// tie handling, so the two routes stay independent.
namespace stvg::oracle {

double oracle_tiou(const Segment& pred, const Segment& gt);

double oracle_viou(const Tube& pred, const Tube& gt);

MomentSelection oracle_select_moment(
    const MomentMap& map,
    ContrastiveNormalization norm = ContrastiveNormalization::Sigmoid);

// Re-derives every linker guarantee on a finished result: tube validity,
// length and count bounds, the detection partition, box provenance, the
// IoU continuity chain across real and bridged frames, interpolated box
// values, and the mean score. Returns one message per violation; empty
// means the result checks out.
std::vector<std::string> oracle_link_check(const std::vector<LinkedTube>& tubes,
                                           const std::vector<Detection>& detections,
                                           const LinkParams& params);

}  // namespace stvg::oracle
