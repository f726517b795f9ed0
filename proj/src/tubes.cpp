#include "stvgkit/tubes.hpp"

#include <stdexcept>
#include <string>

#include "stvgkit/errors.hpp"

namespace stvg {

bool segment_valid(const Segment& s) {
  return s.start_frame >= 0 && s.start_frame <= s.end_frame;
}

std::int64_t segment_frame_count(const Segment& s) {
  if (!segment_valid(s)) {
    throw std::invalid_argument("segment must satisfy 0 <= start_frame <= end_frame");
  }
  return s.end_frame - s.start_frame + 1;
}

const BBox* Tube::box_at(std::int64_t frame) const {
  const auto it = boxes.find(frame);
  return it == boxes.end() ? nullptr : &it->second;
}

std::string TubeViolation::describe() const {
  switch (kind) {
    case Kind::BadSegment:
      return "segment must satisfy 0 <= start_frame <= end_frame";
    case Kind::MissingFrame:
      return "no box for frame " + std::to_string(frame);
    case Kind::ExtraFrame:
      return "box at frame " + std::to_string(frame) + " lies outside the segment";
    case Kind::BadBox:
      return "invalid box at frame " + std::to_string(frame);
  }
  return "unknown violation";
}

std::vector<TubeViolation> validate_tube(const Tube& t) {
  std::vector<TubeViolation> out;
  if (!segment_valid(t.segment)) {
    out.push_back({TubeViolation::Kind::BadSegment, -1});
    return out;
  }
  if (!t.partial) {
    for (std::int64_t f = t.segment.start_frame; f <= t.segment.end_frame; ++f) {
      if (!t.boxes.count(f)) out.push_back({TubeViolation::Kind::MissingFrame, f});
    }
  }
  for (const auto& [frame, box] : t.boxes) {
    if (!t.segment.contains(frame)) {
      out.push_back({TubeViolation::Kind::ExtraFrame, frame});
    }
    if (!box_valid(box)) {
      out.push_back({TubeViolation::Kind::BadBox, frame});
    }
  }
  return out;
}

bool tube_ok(const Tube& t) { return validate_tube(t).empty(); }

void require_valid_tube(const Tube& t, const std::string& context) {
  const auto violations = validate_tube(t);
  if (violations.empty()) return;
  std::string msg = context;
  if (!t.video_id.empty()) msg += " (video '" + t.video_id + "')";
  msg += ": " + violations.front().describe();
  if (violations.size() > 1) {
    msg += " and " + std::to_string(violations.size() - 1) + " more violation(s)";
  }
  throw ValidationError(msg);
}

std::vector<ClipRange> split_into_clips(const Segment& seg, int n_clips) {
  if (n_clips < 1) throw std::invalid_argument("n_clips must be at least 1");
  const std::int64_t total = segment_frame_count(seg);
  const std::int64_t base = total / n_clips;
  const std::int64_t remainder = total % n_clips;
  std::vector<ClipRange> out;
  out.reserve(static_cast<std::size_t>(n_clips));
  std::int64_t next = seg.start_frame;
  for (int i = 0; i < n_clips; ++i) {
    const std::int64_t len = base + (i < remainder ? 1 : 0);
    if (len == 0) {
      out.push_back(ClipRange{next, next - 1});
    } else {
      out.push_back(ClipRange{next, next + len - 1});
      next += len;
    }
  }
  return out;
}

Tube crop_to_segment(const Tube& t, const Segment& seg) {
  if (!segment_valid(seg)) {
    throw std::invalid_argument("crop segment must satisfy 0 <= start_frame <= end_frame");
  }
  Tube out = t;
  out.segment = seg;
  out.boxes.clear();
  for (std::int64_t f = seg.start_frame; f <= seg.end_frame; ++f) {
    if (const BBox* b = t.box_at(f)) out.boxes[f] = *b;
  }
  out.partial = out.boxes.size() !=
                static_cast<std::size_t>(seg.end_frame - seg.start_frame + 1);
  return out;
}

}  // namespace stvg
