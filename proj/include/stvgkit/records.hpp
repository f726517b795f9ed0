#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stvgkit/linking.hpp"
#include "stvgkit/tubes.hpp"

namespace stvg {

// Per-clip model outputs attached to a record. Score lists over candidate
// spans are stored flat in lexicographic candidate order; n_clips declares
// the clip count they were produced over. clip_length_frames maps clip
// indices to frames for records whose clips have a fixed frame length;
// 0 means unset.
struct MomentScores {
  int n_clips = 0;
  std::vector<double> predicted_iou;
  std::vector<double> contrastive;
  std::vector<double> p_start;
  std::vector<double> p_end;
  std::int64_t clip_length_frames = 0;

  bool operator==(const MomentScores&) const = default;
};

// One line of a dataset or prediction file: everything known about one
// video under one query. Only video_id is mandatory; a record may carry a
// tube (segment, boxes), per-clip scores, raw detections, or any mix.
// Unknown fields survive a read/write round trip verbatim in `extra`.
struct GroundingRecord {
  std::string video_id;
  std::string query;
  std::optional<Segment> segment;
  std::map<std::int64_t, BBox> boxes;
  bool partial = false;
  std::string source;
  std::map<std::string, std::string> meta;
  std::optional<double> score;
  std::optional<MomentScores> scores;
  std::vector<Detection> detections;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  bool operator==(const GroundingRecord&) const = default;

  bool has_tube() const { return segment.has_value(); }

  // Tube view of this record. Throws ValidationError when no segment is
  // present.
  Tube tube() const;

  static GroundingRecord from_tube(const Tube& t);
};

// Parses one JSON line. line_no appears in error messages; pass 0 when the
// text does not come from a file.
GroundingRecord record_from_json_line(const std::string& line, std::size_t line_no = 0);

std::string record_to_json_line(const GroundingRecord& r);

// Reads a line-delimited record file, validating every record. Malformed
// lines raise IoError naming the line; invalid tubes, detections, or score
// shapes raise ValidationError naming the record.
std::vector<GroundingRecord> read_records(const std::filesystem::path& path);

void write_records(const std::vector<GroundingRecord>& records,
                   const std::filesystem::path& path);

}  // namespace stvg
