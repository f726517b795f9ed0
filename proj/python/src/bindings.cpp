#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "stvgkit/config.hpp"
#include "stvgkit/errors.hpp"
#include "stvgkit/fusion.hpp"
#include "stvgkit/geometry.hpp"
#include "stvgkit/linking.hpp"
#include "stvgkit/losses.hpp"
#include "stvgkit/manifest.hpp"
#include "stvgkit/metrics.hpp"
#include "stvgkit/moments.hpp"
#include "stvgkit/oracle.hpp"
#include "stvgkit/records.hpp"
#include "stvgkit/reports.hpp"
#include "stvgkit/synth.hpp"
#include "stvgkit/tubes.hpp"

namespace py = pybind11;
using namespace stvg;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Geometry, metrics, fusion, linking, and losses for "
            "spatio-temporal video grounding predictions";

  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<BBox>(m, "BBox")
      .def(py::init<>())
      .def(py::init<double, double, double, double>(), py::arg("x1"), py::arg("y1"),
           py::arg("x2"), py::arg("y2"))
      .def_readwrite("x1", &BBox::x1)
      .def_readwrite("y1", &BBox::y1)
      .def_readwrite("x2", &BBox::x2)
      .def_readwrite("y2", &BBox::y2)
      .def(py::self == py::self)
      .def("__repr__", [](const BBox& b) {
        std::ostringstream out;
        out << "BBox(" << b.x1 << ", " << b.y1 << ", " << b.x2 << ", " << b.y2 << ")";
        return out.str();
      });

  m.def("box_valid", &box_valid, py::arg("box"));
  m.def("box_area", &box_area, py::arg("box"));
  m.def("box_iou", &box_iou, py::arg("a"), py::arg("b"));
  m.def("enclosing_box", &enclosing_box, py::arg("a"), py::arg("b"));
  m.def("box_giou", &box_giou, py::arg("a"), py::arg("b"));
  m.def("box_l1", &box_l1, py::arg("a"), py::arg("b"));

  py::class_<Segment>(m, "Segment")
      .def(py::init<>())
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("start_frame"),
           py::arg("end_frame"))
      .def_readwrite("start_frame", &Segment::start_frame)
      .def_readwrite("end_frame", &Segment::end_frame)
      .def("contains", &Segment::contains, py::arg("frame"))
      .def(py::self == py::self)
      .def("__repr__", [](const Segment& s) {
        return "Segment(" + std::to_string(s.start_frame) + ", " +
               std::to_string(s.end_frame) + ")";
      });

  m.def("segment_valid", &segment_valid, py::arg("segment"));
  m.def("segment_frame_count", &segment_frame_count, py::arg("segment"));

  py::class_<Tube>(m, "Tube")
      .def(py::init<>())
      .def_readwrite("video_id", &Tube::video_id)
      .def_readwrite("query", &Tube::query)
      .def_readwrite("segment", &Tube::segment)
      .def_readwrite("boxes", &Tube::boxes)
      .def_readwrite("partial", &Tube::partial)
      .def_readwrite("source", &Tube::source)
      .def_readwrite("meta", &Tube::meta)
      .def("box_at",
           [](const Tube& t, std::int64_t frame) -> py::object {
             const BBox* b = t.box_at(frame);
             return b == nullptr ? py::none() : py::cast(*b);
           },
           py::arg("frame"))
      .def("degenerate", &Tube::degenerate)
      .def(py::self == py::self);

  m.def("tube_ok", &tube_ok, py::arg("tube"));
  m.def(
      "tube_violations",
      [](const Tube& t) {
        std::vector<std::string> out;
        for (const TubeViolation& v : validate_tube(t)) out.push_back(v.describe());
        return out;
      },
      py::arg("tube"), "Human-readable invariant violations; empty means valid.");
  m.def("crop_to_segment", &crop_to_segment, py::arg("tube"), py::arg("segment"));

  py::class_<ClipRange>(m, "ClipRange")
      .def(py::init<>())
      .def_readwrite("first_frame", &ClipRange::first_frame)
      .def_readwrite("last_frame", &ClipRange::last_frame)
      .def("empty", &ClipRange::empty)
      .def("frame_count", &ClipRange::frame_count)
      .def(py::self == py::self);

  m.def("split_into_clips", &split_into_clips, py::arg("segment"), py::arg("n_clips"));

  py::class_<ClipSpan>(m, "ClipSpan")
      .def(py::init<>())
      .def(py::init<int, int, std::int64_t>(), py::arg("first_clip"), py::arg("last_clip"),
           py::arg("clip_length_frames") = 0)
      .def_readwrite("first_clip", &ClipSpan::first_clip)
      .def_readwrite("last_clip", &ClipSpan::last_clip)
      .def_readwrite("clip_length_frames", &ClipSpan::clip_length_frames)
      .def(py::self == py::self)
      .def("__repr__", [](const ClipSpan& s) {
        return "ClipSpan(" + std::to_string(s.first_clip) + ", " +
               std::to_string(s.last_clip) + ")";
      });

  py::enum_<Comparison>(m, "Comparison")
      .value("STRICT", Comparison::Strict)
      .value("NONSTRICT", Comparison::NonStrict);
  py::enum_<MissingPolicy>(m, "MissingPolicy")
      .value("SCORE_ZERO", MissingPolicy::ScoreZero)
      .value("SKIP", MissingPolicy::Skip);

  m.def("tiou", &tiou, py::arg("pred"), py::arg("gt"));
  m.def("viou", &viou, py::arg("pred"), py::arg("gt"));
  m.def("viou_at_r", &viou_at_r, py::arg("per_video_viou"), py::arg("r"),
        py::arg("comparison") = Comparison::Strict);

  py::class_<PerVideoMetrics>(m, "PerVideoMetrics")
      .def_readonly("video_id", &PerVideoMetrics::video_id)
      .def_readonly("viou", &PerVideoMetrics::viou)
      .def_readonly("tiou", &PerVideoMetrics::tiou)
      .def_readonly("missing_prediction", &PerVideoMetrics::missing_prediction);

  py::class_<EvalOptions>(m, "EvalOptions")
      .def(py::init<>())
      .def_readwrite("thresholds", &EvalOptions::thresholds)
      .def_readwrite("comparison", &EvalOptions::comparison)
      .def_readwrite("missing", &EvalOptions::missing);

  py::class_<MetricReport>(m, "MetricReport")
      .def_readonly("mean_viou", &MetricReport::mean_viou)
      .def_readonly("mean_tiou", &MetricReport::mean_tiou)
      .def_readonly("viou_at", &MetricReport::viou_at)
      .def_readonly("per_video", &MetricReport::per_video)
      .def_readonly("n_gt", &MetricReport::n_gt)
      .def_readonly("n_missing", &MetricReport::n_missing)
      .def_readonly("n_unmatched_preds", &MetricReport::n_unmatched_preds)
      .def_readonly("comparison", &MetricReport::comparison)
      .def_readonly("missing_policy", &MetricReport::missing_policy)
      .def("to_json", [](const MetricReport& r) { return report_to_json(r); })
      .def("table",
           [](const MetricReport& r, const std::string& label) {
             return format_report_table(r, label);
           },
           py::arg("label") = "prediction");

  m.def("evaluate_dataset", &evaluate_dataset, py::arg("preds"), py::arg("gts"),
        py::arg("options") = EvalOptions{});

  py::enum_<GapPolicy>(m, "GapPolicy")
      .value("NEAREST", GapPolicy::Nearest)
      .value("INTERPOLATE", GapPolicy::Interpolate)
      .value("DROP", GapPolicy::Drop)
      .value("FAIL", GapPolicy::Fail);

  m.def("fuse", &fuse, py::arg("temporal_src"), py::arg("spatial_src"),
        py::arg("policy") = GapPolicy::Nearest);
  m.def("fuse_reverse", &fuse_reverse, py::arg("temporal_src"), py::arg("spatial_src"),
        py::arg("policy") = GapPolicy::Nearest);

  py::class_<Detection>(m, "Detection")
      .def(py::init<>())
      .def(py::init<std::int64_t, BBox, double>(), py::arg("frame_index"), py::arg("box"),
           py::arg("score"))
      .def_readwrite("frame_index", &Detection::frame_index)
      .def_readwrite("box", &Detection::box)
      .def_readwrite("score", &Detection::score)
      .def(py::self == py::self);

  py::class_<LinkParams>(m, "LinkParams")
      .def(py::init<>())
      .def_readwrite("iou_continuity_threshold", &LinkParams::iou_continuity_threshold)
      .def_readwrite("score_weight", &LinkParams::score_weight)
      .def_readwrite("max_gap_frames", &LinkParams::max_gap_frames)
      .def_readwrite("min_tube_length", &LinkParams::min_tube_length)
      .def_readwrite("max_tubes", &LinkParams::max_tubes);

  py::class_<LinkedTube>(m, "LinkedTube")
      .def_readonly("tube", &LinkedTube::tube)
      .def_readonly("mean_score", &LinkedTube::mean_score)
      .def_readonly("interpolated_frames", &LinkedTube::interpolated_frames)
      .def_readonly("detection_indices", &LinkedTube::detection_indices);

  m.def("link_detections", &link_detections, py::arg("detections"),
        py::arg("params") = LinkParams{}, py::arg("video_id") = std::string{});
  m.def("tube_score", &tube_score, py::arg("tube"), py::arg("linked_detections"));

  py::enum_<ContrastiveNormalization>(m, "ContrastiveNormalization")
      .value("SIGMOID", ContrastiveNormalization::Sigmoid)
      .value("RAW", ContrastiveNormalization::Raw);

  py::class_<MomentMap>(m, "MomentMap")
      .def(py::init<>())
      .def(py::init<int, std::vector<double>, std::vector<double>>(), py::arg("n_clips"),
           py::arg("predicted_iou"), py::arg("contrastive"))
      .def_readwrite("n_clips", &MomentMap::n_clips)
      .def_readwrite("predicted_iou", &MomentMap::predicted_iou)
      .def_readwrite("contrastive", &MomentMap::contrastive);

  py::class_<MomentSelection>(m, "MomentSelection")
      .def_readonly("span", &MomentSelection::span)
      .def_readonly("combined_score", &MomentSelection::combined_score);

  py::class_<TemporalDistributions>(m, "TemporalDistributions")
      .def(py::init<>())
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("p_start"),
           py::arg("p_end"))
      .def_readwrite("p_start", &TemporalDistributions::p_start)
      .def_readwrite("p_end", &TemporalDistributions::p_end);

  m.def("logistic", &logistic, py::arg("x"));
  m.def("candidate_count", &candidate_count, py::arg("n_clips"));
  m.def("candidate_index", &candidate_index, py::arg("n_clips"), py::arg("start_clip"),
        py::arg("end_clip"));
  m.def("enumerate_candidates", &enumerate_candidates, py::arg("n_clips"));
  m.def("moment_iou_targets", &moment_iou_targets, py::arg("n_clips"), py::arg("gt_span"));
  m.def("maxpool_span", &maxpool_span, py::arg("clip_features"), py::arg("span"));
  m.def("select_moment", &select_moment, py::arg("map"),
        py::arg("normalization") = ContrastiveNormalization::Sigmoid);
  m.def("span_to_segment", &span_to_segment, py::arg("span"), py::arg("clip_ranges"));
  m.def("decode_start_end", &decode_start_end, py::arg("dists"));

  py::class_<LossWeights>(m, "LossWeights")
      .def(py::init<>())
      .def_readwrite("lambda_", &LossWeights::lambda)
      .def_readwrite("alpha", &LossWeights::alpha)
      .def_readwrite("beta", &LossWeights::beta)
      .def_readwrite("gamma", &LossWeights::gamma)
      .def_readwrite("theta", &LossWeights::theta);

  py::class_<ContrastiveLosses>(m, "ContrastiveLosses")
      .def_readonly("video_loss", &ContrastiveLosses::video_loss)
      .def_readonly("sentence_loss", &ContrastiveLosses::sentence_loss);

  py::class_<BoxLosses>(m, "BoxLosses")
      .def_readonly("l1_loss", &BoxLosses::l1_loss)
      .def_readonly("giou_loss", &BoxLosses::giou_loss);

  py::class_<AttentionRow>(m, "AttentionRow")
      .def(py::init<>())
      .def(py::init<std::vector<double>, std::int64_t, std::int64_t>(),
           py::arg("attention"), py::arg("seg_start"), py::arg("seg_end"))
      .def_readwrite("attention", &AttentionRow::attention)
      .def_readwrite("seg_start", &AttentionRow::seg_start)
      .def_readwrite("seg_end", &AttentionRow::seg_end);

  m.def("mmn_iou_loss", &mmn_iou_loss, py::arg("predicted_iou"), py::arg("target_iou"));
  m.def(
      "contrastive_losses",
      [](const std::vector<std::vector<double>>& similarity) {
        return contrastive_losses(SimilarityMatrix{similarity});
      },
      py::arg("similarity"));
  m.def("mmn_total", &mmn_total, py::arg("iou_loss"), py::arg("video_loss"),
        py::arg("sentence_loss"), py::arg("weights") = LossWeights{});
  m.def("box_losses", &box_losses, py::arg("pred"), py::arg("gt"));
  m.def("kl_temporal_loss", &kl_temporal_loss, py::arg("pred"), py::arg("target"));
  m.def("make_target_distribution", &make_target_distribution, py::arg("endpoint"),
        py::arg("n"), py::arg("smoothing") = 0.0);
  m.def("guided_attention_loss", &guided_attention_loss, py::arg("row"));
  m.def("tubedetr_total", &tubedetr_total, py::arg("box_loss"), py::arg("giou_loss"),
        py::arg("kl_loss"), py::arg("attention_loss"), py::arg("weights") = LossWeights{});

  py::class_<MomentScores>(m, "MomentScores")
      .def(py::init<>())
      .def_readwrite("n_clips", &MomentScores::n_clips)
      .def_readwrite("predicted_iou", &MomentScores::predicted_iou)
      .def_readwrite("contrastive", &MomentScores::contrastive)
      .def_readwrite("p_start", &MomentScores::p_start)
      .def_readwrite("p_end", &MomentScores::p_end)
      .def_readwrite("clip_length_frames", &MomentScores::clip_length_frames)
      .def(py::self == py::self);

  py::class_<GroundingRecord>(m, "GroundingRecord")
      .def(py::init<>())
      .def_readwrite("video_id", &GroundingRecord::video_id)
      .def_readwrite("query", &GroundingRecord::query)
      .def_readwrite("segment", &GroundingRecord::segment)
      .def_readwrite("boxes", &GroundingRecord::boxes)
      .def_readwrite("partial", &GroundingRecord::partial)
      .def_readwrite("source", &GroundingRecord::source)
      .def_readwrite("meta", &GroundingRecord::meta)
      .def_readwrite("score", &GroundingRecord::score)
      .def_readwrite("scores", &GroundingRecord::scores)
      .def_readwrite("detections", &GroundingRecord::detections)
      .def_property(
          "extra",
          [](const GroundingRecord& r) { return r.extra.dump(); },
          [](GroundingRecord& r, const std::string& text) {
            r.extra = nlohmann::ordered_json::parse(text);
          },
          "Unknown record fields as a JSON object string.")
      .def("has_tube", &GroundingRecord::has_tube)
      .def("tube", &GroundingRecord::tube)
      .def_static("from_tube", &GroundingRecord::from_tube, py::arg("tube"))
      .def(py::self == py::self);

  m.def("record_from_json_line", &record_from_json_line, py::arg("line"),
        py::arg("line_no") = 0);
  m.def("record_to_json_line", &record_to_json_line, py::arg("record"));
  m.def("read_records", &read_records, py::arg("path"));
  m.def("write_records", &write_records, py::arg("records"), py::arg("path"));

  py::class_<SynthParams>(m, "SynthParams")
      .def(py::init<>())
      .def_readwrite("n_videos", &SynthParams::n_videos)
      .def_readwrite("frames_per_video", &SynthParams::frames_per_video)
      .def_readwrite("frame_width", &SynthParams::frame_width)
      .def_readwrite("frame_height", &SynthParams::frame_height)
      .def_readwrite("spatial_noise_a", &SynthParams::spatial_noise_a)
      .def_readwrite("spatial_noise_b", &SynthParams::spatial_noise_b)
      .def_readwrite("temporal_jitter_a", &SynthParams::temporal_jitter_a)
      .def_readwrite("temporal_shift_b", &SynthParams::temporal_shift_b)
      .def_readwrite("temporal_truncate_b", &SynthParams::temporal_truncate_b)
      .def_readwrite("detection_score_noise", &SynthParams::detection_score_noise)
      .def_readwrite("detection_gap_period", &SynthParams::detection_gap_period);

  py::class_<SynthDataset>(m, "SynthDataset")
      .def_readonly("gts", &SynthDataset::gts)
      .def_readonly("model_a", &SynthDataset::model_a)
      .def_readonly("model_b", &SynthDataset::model_b)
      .def_readonly("detections", &SynthDataset::detections);

  m.def("synth_dataset", &synth_dataset, py::arg("seed"),
        py::arg("params") = SynthParams{});

  py::class_<DatasetManifest>(m, "DatasetManifest")
      .def_readonly("version", &DatasetManifest::version)
      .def_readonly("splits", &DatasetManifest::splits);

  py::class_<SplitCheck>(m, "SplitCheck")
      .def_readonly("split", &SplitCheck::split)
      .def_readonly("expected", &SplitCheck::expected)
      .def_readonly("actual", &SplitCheck::actual)
      .def_readonly("pass_", &SplitCheck::pass);

  py::class_<ManifestReport>(m, "ManifestReport")
      .def_readonly("version", &ManifestReport::version)
      .def_readonly("checks", &ManifestReport::checks)
      .def_readonly("all_pass", &ManifestReport::all_pass)
      .def("__str__", [](const ManifestReport& r) { return format_manifest_report(r); });

  m.def("read_manifest", &read_manifest, py::arg("path"));
  m.def("validate_manifest", &validate_manifest, py::arg("manifest"),
        py::arg("records_by_split"));

  m.def("oracle_tiou", &oracle::oracle_tiou, py::arg("pred"), py::arg("gt"));
  m.def("oracle_viou", &oracle::oracle_viou, py::arg("pred"), py::arg("gt"));
}
