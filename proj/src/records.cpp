#include "stvgkit/records.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "stvgkit/errors.hpp"

namespace stvg {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string line_prefix(std::size_t line_no) {
  return line_no == 0 ? std::string() : "line " + std::to_string(line_no) + ": ";
}

std::string record_prefix(const std::string& video_id, std::size_t line_no) {
  std::string out = line_prefix(line_no);
  out += video_id.empty() ? "record" : "record '" + video_id + "'";
  out += ": ";
  return out;
}

double number_or_throw(const ordered_json& v, const std::string& what) {
  if (!v.is_number()) throw ValidationError(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(what + " must be finite");
  return x;
}

std::int64_t integer_or_throw(const ordered_json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ValidationError(what + " must be an integer");
  return v.get<std::int64_t>();
}

BBox box_from_json(const ordered_json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 4) {
    throw ValidationError(what + " must be an array of 4 numbers");
  }
  BBox b{number_or_throw(v[0], what), number_or_throw(v[1], what),
         number_or_throw(v[2], what), number_or_throw(v[3], what)};
  if (!box_valid(b)) {
    throw ValidationError(what + " must satisfy x1 <= x2 and y1 <= y2");
  }
  return b;
}

std::vector<double> number_list(const ordered_json& v, const std::string& what) {
  if (!v.is_array()) throw ValidationError(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(number_or_throw(x, what));
  return out;
}

// Candidate scores arrive either flat in lexicographic candidate order or
// as an n x n matrix whose upper triangle is read in the same order.
std::vector<double> candidate_scores(const ordered_json& v, const std::string& what,
                                     int* matrix_n) {
  if (!v.is_array() || v.empty()) {
    throw ValidationError(what + " must be a nonempty array");
  }
  if (!v.front().is_array()) return number_list(v, what);
  const std::size_t n = v.size();
  std::vector<double> out;
  out.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = v[i];
    if (!row.is_array() || row.size() != n) {
      throw ValidationError(what + " matrix must be square");
    }
    for (std::size_t j = i; j < n; ++j) {
      out.push_back(number_or_throw(row[j], what));
    }
  }
  *matrix_n = static_cast<int>(n);
  return out;
}

// The clip count triangular scores were produced over, or -1 when the flat
// length is not a triangular number.
int clips_from_flat_count(std::size_t count) {
  std::size_t n = 0;
  std::size_t total = 0;
  while (total < count) total += ++n;
  return total == count ? static_cast<int>(n) : -1;
}

MomentScores scores_from_json(const ordered_json& v, const std::string& ctx) {
  if (!v.is_object()) throw ValidationError(ctx + "scores must be an object");
  MomentScores s;
  int matrix_n = 0;
  for (const auto& [key, value] : v.items()) {
    if (key == "n_clips") {
      const std::int64_t n = integer_or_throw(value, ctx + "scores.n_clips");
      if (n < 1) throw ValidationError(ctx + "scores.n_clips must be at least 1");
      s.n_clips = static_cast<int>(n);
    } else if (key == "clip_length_frames") {
      const std::int64_t n = integer_or_throw(value, ctx + "scores.clip_length_frames");
      if (n < 1) throw ValidationError(ctx + "scores.clip_length_frames must be at least 1");
      s.clip_length_frames = n;
    } else if (key == "predicted_iou") {
      s.predicted_iou = candidate_scores(value, ctx + "scores.predicted_iou", &matrix_n);
    } else if (key == "contrastive") {
      s.contrastive = candidate_scores(value, ctx + "scores.contrastive", &matrix_n);
    } else if (key == "p_start") {
      s.p_start = number_list(value, ctx + "scores.p_start");
    } else if (key == "p_end") {
      s.p_end = number_list(value, ctx + "scores.p_end");
    } else {
      throw ValidationError(ctx + "unknown scores field '" + key + "'");
    }
  }

  if (s.n_clips == 0) {
    if (matrix_n > 0) {
      s.n_clips = matrix_n;
    } else if (!s.p_start.empty()) {
      s.n_clips = static_cast<int>(s.p_start.size());
    } else if (!s.predicted_iou.empty() || !s.contrastive.empty()) {
      const auto& flat = s.predicted_iou.empty() ? s.contrastive : s.predicted_iou;
      const int n = clips_from_flat_count(flat.size());
      if (n < 1) {
        throw ValidationError(ctx + "cannot infer n_clips from " +
                              std::to_string(flat.size()) + " candidate scores");
      }
      s.n_clips = n;
    } else {
      throw ValidationError(ctx + "scores carry no data");
    }
  }

  const auto n = static_cast<std::size_t>(s.n_clips);
  const std::size_t candidates = n * (n + 1) / 2;
  if (!s.predicted_iou.empty() && s.predicted_iou.size() != candidates) {
    throw ValidationError(ctx + "predicted_iou must score all " +
                          std::to_string(candidates) + " candidates over " +
                          std::to_string(s.n_clips) + " clips");
  }
  if (!s.contrastive.empty() && s.contrastive.size() != candidates) {
    throw ValidationError(ctx + "contrastive must score all " +
                          std::to_string(candidates) + " candidates over " +
                          std::to_string(s.n_clips) + " clips");
  }
  if (s.p_start.size() != s.p_end.size()) {
    throw ValidationError(ctx + "p_start and p_end must have equal length");
  }
  if (!s.p_start.empty() && s.p_start.size() != n) {
    throw ValidationError(ctx + "p_start and p_end must cover all " +
                          std::to_string(s.n_clips) + " clips");
  }
  return s;
}

ordered_json scores_to_json(const MomentScores& s) {
  ordered_json out = ordered_json::object();
  out["n_clips"] = s.n_clips;
  if (s.clip_length_frames > 0) out["clip_length_frames"] = s.clip_length_frames;
  if (!s.predicted_iou.empty()) out["predicted_iou"] = s.predicted_iou;
  if (!s.contrastive.empty()) out["contrastive"] = s.contrastive;
  if (!s.p_start.empty()) {
    out["p_start"] = s.p_start;
    out["p_end"] = s.p_end;
  }
  return out;
}

}  // namespace

Tube GroundingRecord::tube() const {
  if (!segment.has_value()) {
    throw ValidationError(record_prefix(video_id, 0) + "carries no tube");
  }
  Tube t;
  t.video_id = video_id;
  t.query = query;
  t.segment = *segment;
  t.boxes = boxes;
  t.partial = partial;
  t.source = source;
  t.meta = meta;
  return t;
}

GroundingRecord GroundingRecord::from_tube(const Tube& t) {
  GroundingRecord r;
  r.video_id = t.video_id;
  r.query = t.query;
  r.segment = t.segment;
  r.boxes = t.boxes;
  r.partial = t.partial;
  r.source = t.source;
  r.meta = t.meta;
  return r;
}

GroundingRecord record_from_json_line(const std::string& line, std::size_t line_no) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(line_prefix(line_no) + "not valid JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw IoError(line_prefix(line_no) + "record must be a JSON object");
  }

  GroundingRecord r;
  if (j.contains("video_id") && j["video_id"].is_string()) {
    r.video_id = j["video_id"].get<std::string>();
  }
  const std::string ctx = record_prefix(r.video_id, line_no);
  if (r.video_id.empty()) {
    throw ValidationError(ctx + "video_id must be a nonempty string");
  }

  for (const auto& [key, value] : j.items()) {
    if (key == "video_id") {
      continue;
    } else if (key == "query") {
      if (!value.is_string()) throw ValidationError(ctx + "query must be a string");
      r.query = value.get<std::string>();
    } else if (key == "source") {
      if (!value.is_string()) throw ValidationError(ctx + "source must be a string");
      r.source = value.get<std::string>();
    } else if (key == "segment") {
      if (!value.is_array() || value.size() != 2) {
        throw ValidationError(ctx + "segment must be [start_frame, end_frame]");
      }
      r.segment = Segment{integer_or_throw(value[0], ctx + "segment start"),
                          integer_or_throw(value[1], ctx + "segment end")};
    } else if (key == "partial") {
      if (!value.is_boolean()) throw ValidationError(ctx + "partial must be a boolean");
      r.partial = value.get<bool>();
    } else if (key == "boxes") {
      if (!value.is_object()) {
        throw ValidationError(ctx + "boxes must map frame indices to boxes");
      }
      for (const auto& [frame_key, boxjson] : value.items()) {
        std::size_t consumed = 0;
        std::int64_t frame = 0;
        try {
          frame = std::stoll(frame_key, &consumed);
        } catch (const std::exception&) {
          consumed = 0;
        }
        if (consumed != frame_key.size()) {
          throw ValidationError(ctx + "frame key '" + frame_key + "' is not an integer");
        }
        r.boxes[frame] = box_from_json(boxjson, ctx + "box at frame " + frame_key);
      }
    } else if (key == "meta") {
      if (!value.is_object()) throw ValidationError(ctx + "meta must be an object");
      for (const auto& [mk, mv] : value.items()) {
        if (!mv.is_string()) {
          throw ValidationError(ctx + "meta values must be strings");
        }
        r.meta[mk] = mv.get<std::string>();
      }
    } else if (key == "score") {
      r.score = number_or_throw(value, ctx + "score");
    } else if (key == "scores") {
      r.scores = scores_from_json(value, ctx);
    } else if (key == "detections") {
      if (!value.is_array()) throw ValidationError(ctx + "detections must be an array");
      for (const auto& d : value.items()) {
        const auto& dj = d.value();
        if (!dj.is_object() || !dj.contains("frame") || !dj.contains("box") ||
            !dj.contains("score")) {
          throw ValidationError(ctx + "each detection needs frame, box, and score");
        }
        Detection det;
        det.frame_index = integer_or_throw(dj["frame"], ctx + "detection frame");
        if (det.frame_index < 0) {
          throw ValidationError(ctx + "detection frame must be nonnegative");
        }
        det.box = box_from_json(dj["box"], ctx + "detection box");
        det.score = number_or_throw(dj["score"], ctx + "detection score");
        if (!r.detections.empty() && det.frame_index < r.detections.back().frame_index) {
          throw ValidationError(ctx + "detections must be sorted by frame");
        }
        r.detections.push_back(det);
      }
    } else {
      r.extra[key] = value;
    }
  }

  if (!r.boxes.empty() && !r.segment.has_value()) {
    throw ValidationError(ctx + "boxes require a segment");
  }
  if (r.segment.has_value()) {
    const auto violations = validate_tube(r.tube());
    if (!violations.empty()) {
      std::string msg = ctx + violations.front().describe();
      if (violations.size() > 1) {
        msg += " and " + std::to_string(violations.size() - 1) + " more violation(s)";
      }
      throw ValidationError(msg);
    }
  }
  return r;
}

std::string record_to_json_line(const GroundingRecord& r) {
  ordered_json j = ordered_json::object();
  j["video_id"] = r.video_id;
  if (!r.query.empty()) j["query"] = r.query;
  if (!r.source.empty()) j["source"] = r.source;
  if (r.segment.has_value()) {
    j["segment"] = {r.segment->start_frame, r.segment->end_frame};
  }
  if (r.partial) j["partial"] = true;
  if (!r.boxes.empty()) {
    ordered_json boxes = ordered_json::object();
    for (const auto& [frame, box] : r.boxes) {
      boxes[std::to_string(frame)] = {box.x1, box.y1, box.x2, box.y2};
    }
    j["boxes"] = std::move(boxes);
  }
  if (r.score.has_value()) j["score"] = *r.score;
  if (r.scores.has_value()) j["scores"] = scores_to_json(*r.scores);
  if (!r.detections.empty()) {
    ordered_json dets = ordered_json::array();
    for (const Detection& d : r.detections) {
      ordered_json dj = ordered_json::object();
      dj["frame"] = d.frame_index;
      dj["box"] = {d.box.x1, d.box.y1, d.box.x2, d.box.y2};
      dj["score"] = d.score;
      dets.push_back(std::move(dj));
    }
    j["detections"] = std::move(dets);
  }
  if (!r.meta.empty()) {
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : r.meta) meta[k] = v;
    j["meta"] = std::move(meta);
  }
  for (const auto& [key, value] : r.extra.items()) {
    if (!j.contains(key)) j[key] = value;
  }
  return j.dump();
}

std::vector<GroundingRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<GroundingRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json_line(line, line_no));
    } catch (const IoError& e) {
      throw IoError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
  }
  if (in.bad()) throw IoError("failed while reading '" + path.string() + "'");
  return out;
}

void write_records(const std::vector<GroundingRecord>& records,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (const GroundingRecord& r : records) {
    out << record_to_json_line(r) << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

}  // namespace stvg
