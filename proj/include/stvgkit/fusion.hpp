#pragma once

#include <string>

#include "stvgkit/tubes.hpp"

namespace stvg {

// What to do on frames of the fused temporal extent that the spatial
// source does not cover.
enum class GapPolicy { Nearest, Interpolate, Drop, Fail };

const char* gap_policy_name(GapPolicy p);
GapPolicy parse_gap_policy(const std::string& name);

// Combines the temporal extent of one tube with the boxes of another. The
// fused segment is exactly temporal_src's; wherever spatial_src covers a
// frame its box is copied verbatim, and uncovered frames are filled per
// `policy`:
//   Nearest      copy the box of the closest covered frame (earlier on ties)
//   Interpolate  linear interpolation between the neighbors on each side,
//                falling back to Nearest past the ends
//   Drop         leave the frame uncovered and mark the tube partial; a
//                tube with no covered frame at all is flagged degenerate
//                in its metadata
//   Fail         throw ValidationError on the first gap
// Both tubes must be valid and name the same video. The result records the
// policy and source labels in its metadata.
Tube fuse(const Tube& temporal_src, const Tube& spatial_src,
          GapPolicy policy = GapPolicy::Nearest);

// Alias of fuse with identical roles. Call sites swapping which model
// supplies the temporal extent read explicitly with this name; the output
// metadata is the same as fuse's.
Tube fuse_reverse(const Tube& temporal_src, const Tube& spatial_src,
                  GapPolicy policy = GapPolicy::Nearest);

}  // namespace stvg
