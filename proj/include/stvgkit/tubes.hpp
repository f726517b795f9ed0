#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stvgkit/geometry.hpp"

namespace stvg {

// Inclusive frame interval. Frames are nonnegative integers; a segment
// always contains at least one frame.
struct Segment {
  std::int64_t start_frame = 0;
  std::int64_t end_frame = 0;

  bool operator==(const Segment&) const = default;
  bool contains(std::int64_t frame) const {
    return frame >= start_frame && frame <= end_frame;
  }
};

bool segment_valid(const Segment& s);
std::int64_t segment_frame_count(const Segment& s);

// One subject's localization through a video: a temporal segment plus one
// box per covered frame. `partial` marks tubes that intentionally miss
// boxes on some frames of their segment (a fused tube built under the drop
// gap policy, or a temporal-only prediction); metrics score such frames as
// zero spatial overlap. `source` and `meta` carry provenance labels.
struct Tube {
  std::string video_id;
  std::string query;
  Segment segment;
  std::map<std::int64_t, BBox> boxes;
  bool partial = false;
  std::string source;
  std::map<std::string, std::string> meta;

  bool operator==(const Tube&) const = default;

  // Box at `frame`, or nullptr when uncovered.
  const BBox* box_at(std::int64_t frame) const;

  // A partial tube that ended up with no boxes at all.
  bool degenerate() const { return partial && boxes.empty(); }
};

struct TubeViolation {
  enum class Kind { BadSegment, MissingFrame, ExtraFrame, BadBox };

  Kind kind = Kind::BadSegment;
  std::int64_t frame = -1;  // -1 when not frame specific

  std::string describe() const;
  bool operator==(const TubeViolation&) const = default;
};

// Checks the tube invariants and reports every violation found. A partial
// tube may miss frames inside its segment; no tube may carry boxes outside
// its segment or invalid boxes.
std::vector<TubeViolation> validate_tube(const Tube& t);

bool tube_ok(const Tube& t);

// Throws ValidationError naming `context` and the first violation.
void require_valid_tube(const Tube& t, const std::string& context);

// Contiguous frame range assigned to one clip. Empty ranges (last < first)
// appear when a segment is split into more clips than it has frames.
struct ClipRange {
  std::int64_t first_frame = 0;
  std::int64_t last_frame = -1;

  bool operator==(const ClipRange&) const = default;
  bool empty() const { return last_frame < first_frame; }
  std::int64_t frame_count() const {
    return empty() ? 0 : last_frame - first_frame + 1;
  }
};

// Splits `seg` into n_clips contiguous ranges whose lengths differ by at
// most one, longer ranges first. When the segment has fewer frames than
// clips, the trailing ranges are empty. Throws std::invalid_argument when
// n_clips < 1 or the segment is invalid.
std::vector<ClipRange> split_into_clips(const Segment& seg, int n_clips);

// Inclusive span of clip indices. clip_length_frames is carried as
// metadata by spans that came from a fixed-length clip decomposition;
// 0 means unset.
struct ClipSpan {
  int first_clip = 0;
  int last_clip = 0;
  std::int64_t clip_length_frames = 0;

  bool operator==(const ClipSpan&) const = default;
};

// Restriction of `t` to `seg`: keeps the boxes that exist there and marks
// the result partial when some frames of `seg` are uncovered. Throws
// std::invalid_argument when `seg` is invalid.
Tube crop_to_segment(const Tube& t, const Segment& seg);

}  // namespace stvg
