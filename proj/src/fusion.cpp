#include "stvgkit/fusion.hpp"

#include <stdexcept>
#include <string>

#include "stvgkit/errors.hpp"

namespace stvg {

namespace {

const BBox& nearest_box(const Tube& t, std::int64_t frame) {
  // Caller guarantees the tube has at least one box and none at `frame`.
  auto next = t.boxes.lower_bound(frame);
  if (next == t.boxes.begin()) return next->second;
  if (next == t.boxes.end()) return std::prev(next)->second;
  const auto prev = std::prev(next);
  // Equidistant neighbors resolve to the earlier frame.
  if (frame - prev->first <= next->first - frame) return prev->second;
  return next->second;
}

BBox lerp_box(const BBox& a, const BBox& b, double t) {
  return BBox{a.x1 + (b.x1 - a.x1) * t, a.y1 + (b.y1 - a.y1) * t,
              a.x2 + (b.x2 - a.x2) * t, a.y2 + (b.y2 - a.y2) * t};
}

BBox interpolated_box(const Tube& t, std::int64_t frame) {
  auto next = t.boxes.lower_bound(frame);
  if (next == t.boxes.begin()) return next->second;
  if (next == t.boxes.end()) return std::prev(next)->second;
  const auto prev = std::prev(next);
  const double frac = static_cast<double>(frame - prev->first) /
                      static_cast<double>(next->first - prev->first);
  return lerp_box(prev->second, next->second, frac);
}

}  // namespace

const char* gap_policy_name(GapPolicy p) {
  switch (p) {
    case GapPolicy::Nearest: return "nearest";
    case GapPolicy::Interpolate: return "interpolate";
    case GapPolicy::Drop: return "drop";
    case GapPolicy::Fail: return "fail";
  }
  return "nearest";
}

GapPolicy parse_gap_policy(const std::string& name) {
  if (name == "nearest") return GapPolicy::Nearest;
  if (name == "interpolate") return GapPolicy::Interpolate;
  if (name == "drop") return GapPolicy::Drop;
  if (name == "fail") return GapPolicy::Fail;
  throw std::invalid_argument("unknown gap policy '" + name +
                              "' (nearest|interpolate|drop|fail)");
}

Tube fuse(const Tube& temporal_src, const Tube& spatial_src, GapPolicy policy) {
  require_valid_tube(temporal_src, "temporal source");
  require_valid_tube(spatial_src, "spatial source");
  if (temporal_src.video_id != spatial_src.video_id) {
    throw std::invalid_argument("fusing tubes from different videos ('" +
                                temporal_src.video_id + "' vs '" +
                                spatial_src.video_id + "')");
  }

  Tube out;
  out.video_id = temporal_src.video_id;
  out.query = !temporal_src.query.empty() ? temporal_src.query : spatial_src.query;
  out.segment = temporal_src.segment;

  for (std::int64_t f = out.segment.start_frame; f <= out.segment.end_frame; ++f) {
    if (const BBox* covered = spatial_src.box_at(f)) {
      out.boxes[f] = *covered;
      continue;
    }
    switch (policy) {
      case GapPolicy::Fail:
        throw ValidationError("fusion gap at frame " + std::to_string(f) +
                              " of video '" + out.video_id + "' under the fail policy");
      case GapPolicy::Drop:
        out.partial = true;
        break;
      case GapPolicy::Nearest:
      case GapPolicy::Interpolate:
        if (spatial_src.boxes.empty()) {
          throw ValidationError("spatial source for video '" + out.video_id +
                                "' has no boxes to fill gaps from");
        }
        out.boxes[f] = policy == GapPolicy::Nearest ? nearest_box(spatial_src, f)
                                                    : interpolated_box(spatial_src, f);
        break;
    }
  }

  if (out.partial && out.boxes.empty()) out.meta["degenerate"] = "true";
  out.meta["fusion_policy"] = gap_policy_name(policy);
  if (!temporal_src.source.empty()) out.meta["temporal_source"] = temporal_src.source;
  if (!spatial_src.source.empty()) out.meta["spatial_source"] = spatial_src.source;
  if (!temporal_src.source.empty() && !spatial_src.source.empty()) {
    out.source = temporal_src.source + "+" + spatial_src.source;
  }
  return out;
}

Tube fuse_reverse(const Tube& temporal_src, const Tube& spatial_src, GapPolicy policy) {
  return fuse(temporal_src, spatial_src, policy);
}

}  // namespace stvg
