#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "stvgkit/config.hpp"
#include "stvgkit/errors.hpp"
#include "stvgkit/fusion.hpp"
#include "stvgkit/linking.hpp"
#include "stvgkit/losses.hpp"
#include "stvgkit/manifest.hpp"
#include "stvgkit/metrics.hpp"
#include "stvgkit/moments.hpp"
#include "stvgkit/records.hpp"
#include "stvgkit/reports.hpp"
#include "stvgkit/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::vector<stvg::Tube> tubes_of(const std::vector<stvg::GroundingRecord>& records,
                                 const char* role) {
  std::vector<stvg::Tube> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (!r.has_tube()) {
      throw stvg::ValidationError(std::string(role) + " record '" + r.video_id +
                                  "' carries no tube");
    }
    out.push_back(r.tube());
  }
  return out;
}

void ensure_parent_dir(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw stvg::IoError("cannot open '" + path + "'");
  try {
    return ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    throw stvg::IoError("'" + path + "': " + e.what());
  }
}

std::vector<double> number_list(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw stvg::ValidationError("loss input needs a numeric list '" + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) {
      throw stvg::ValidationError("'" + key + "' holds a non-numeric entry");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> number_matrix(const ordered_json& j,
                                               const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw stvg::ValidationError("loss input needs a matrix '" + key + "'");
  }
  std::vector<std::vector<double>> out;
  for (const auto& row : j[key]) {
    if (!row.is_array()) {
      throw stvg::ValidationError("'" + key + "' holds a non-list row");
    }
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw stvg::ValidationError("'" + key + "' holds a non-numeric entry");
      }
      r.push_back(v.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<stvg::BBox> box_list(const ordered_json& j, const std::string& key) {
  const auto rows = number_matrix(j, key);
  std::vector<stvg::BBox> out;
  for (const auto& r : rows) {
    if (r.size() != 4) {
      throw stvg::ValidationError("'" + key + "' boxes need [x1, y1, x2, y2]");
    }
    out.push_back(stvg::BBox{r[0], r[1], r[2], r[3]});
  }
  return out;
}

stvg::TemporalDistributions dists_of(const ordered_json& j, const std::string& start_key,
                                     const std::string& end_key) {
  return {number_list(j, start_key), number_list(j, end_key)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for spatio-temporal video grounding predictions"};
  app.set_version_flag("--version", "stvgkit 0.1.0");
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file (default: $STVGKIT_CONFIG when set)")
      ->check(CLI::ExistingFile);

  // eval
  auto* eval = app.add_subcommand("eval", "Score prediction tubes against groundtruth");
  std::string eval_pred, eval_gt, eval_report, eval_label = "pred";
  std::vector<double> eval_thresholds;
  std::string eval_cmp, eval_missing;
  eval->add_option("--pred", eval_pred, "Prediction records (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--gt", eval_gt, "Groundtruth records (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* eval_thr_opt =
      eval->add_option("--threshold", eval_thresholds, "vIoU@R threshold, repeatable");
  auto* eval_cmp_opt = eval->add_option("--comparison", eval_cmp, "strict|nonstrict")
                           ->check(CLI::IsMember({"strict", "nonstrict"}));
  auto* eval_missing_opt = eval->add_option("--missing", eval_missing, "score_zero|skip")
                               ->check(CLI::IsMember({"score_zero", "skip"}));
  eval->add_option("--label", eval_label, "Method name shown in the table");
  eval->add_option("--report", eval_report, "Write the full JSON report to this file");

  // fuse
  auto* fuse_cmd = app.add_subcommand(
      "fuse", "Combine one model's temporal extent with another model's boxes");
  std::string fuse_temporal, fuse_spatial, fuse_out, fuse_policy;
  fuse_cmd->add_option("--temporal", fuse_temporal, "Records supplying the segments")
      ->required()
      ->check(CLI::ExistingFile);
  fuse_cmd->add_option("--spatial", fuse_spatial, "Records supplying the boxes")
      ->required()
      ->check(CLI::ExistingFile);
  fuse_cmd->add_option("--out", fuse_out, "Output records (JSONL)")->required();
  auto* fuse_policy_opt =
      fuse_cmd->add_option("--policy", fuse_policy, "nearest|interpolate|drop|fail")
          ->check(CLI::IsMember({"nearest", "interpolate", "drop", "fail"}));

  // link
  auto* link = app.add_subcommand("link", "Link per-frame detections into tubes");
  std::string link_in, link_out;
  double link_thr = 0.0, link_w = 0.0;
  std::int64_t link_gap = 0, link_min = 0, link_max = 0;
  link->add_option("--detections", link_in, "Detection records (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  link->add_option("--out", link_out, "Output records (JSONL)")->required();
  auto* link_thr_opt =
      link->add_option("--iou-threshold", link_thr, "Minimum IoU to extend a tube");
  auto* link_w_opt =
      link->add_option("--score-weight", link_w, "Weight of IoU in the extension score");
  auto* link_gap_opt =
      link->add_option("--max-gap", link_gap, "Longest frame gap bridged by interpolation");
  auto* link_min_opt =
      link->add_option("--min-length", link_min, "Shortest tube kept, in frames");
  auto* link_max_opt = link->add_option("--max-tubes", link_max, "Cap on built tubes");
  bool link_best = false;
  link->add_flag("--best-per-video", link_best,
                 "Keep only the highest mean-score tube per video");

  // moments
  auto* moments =
      app.add_subcommand("moments", "Pick spans from moment maps or start/end scores");
  std::string m_in, m_out, m_norm, m_task = "select";
  moments->add_option("--scores", m_in, "Records carrying per-clip scores (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  moments->add_option("--out", m_out, "Output records (JSONL)")->required();
  moments->add_option("--task", m_task, "select|decode")
      ->check(CLI::IsMember({"select", "decode"}));
  auto* m_norm_opt = moments->add_option("--normalization", m_norm, "sigmoid|raw")
                         ->check(CLI::IsMember({"sigmoid", "raw"}));

  // loss
  auto* loss = app.add_subcommand("loss", "Evaluate one loss term on a JSON input");
  std::string loss_kind, loss_in;
  double w_lambda = 0.0, w_alpha = 0.0, w_beta = 0.0, w_gamma = 0.0, w_theta = 0.0;
  loss->add_option("--kind", loss_kind,
                   "mmn_iou|contrastive|mmn_total|box|kl|attention|tubedetr_total")
      ->required()
      ->check(CLI::IsMember({"mmn_iou", "contrastive", "mmn_total", "box", "kl",
                             "attention", "tubedetr_total"}));
  loss->add_option("--input", loss_in, "JSON file with the term's inputs")
      ->required()
      ->check(CLI::ExistingFile);
  auto* w_lambda_opt = loss->add_option("--lambda", w_lambda, "Contrastive weight");
  auto* w_alpha_opt = loss->add_option("--alpha", w_alpha, "Box L1 weight");
  auto* w_beta_opt = loss->add_option("--beta", w_beta, "Generalized IoU weight");
  auto* w_gamma_opt = loss->add_option("--gamma", w_gamma, "Temporal KL weight");
  auto* w_theta_opt = loss->add_option("--theta", w_theta, "Guided attention weight");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic benchmark dataset");
  std::string synth_out;
  std::uint64_t synth_seed = 0;
  stvg::SynthParams sp;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--n-videos", sp.n_videos, "Number of videos");
  synth->add_option("--frames", sp.frames_per_video, "Frames per video");
  synth->add_option("--frame-width", sp.frame_width, "Frame width in pixels");
  synth->add_option("--frame-height", sp.frame_height, "Frame height in pixels");
  synth->add_option("--noise-a", sp.spatial_noise_a, "Model A box jitter fraction");
  synth->add_option("--noise-b", sp.spatial_noise_b, "Model B box jitter fraction");
  synth->add_option("--jitter-a", sp.temporal_jitter_a,
                    "Model A segment jitter in frames");
  synth->add_option("--shift-b", sp.temporal_shift_b, "Model B segment shift fraction");
  synth->add_option("--truncate-b", sp.temporal_truncate_b,
                    "Model B segment truncation fraction");
  synth->add_option("--score-noise", sp.detection_score_noise,
                    "Detection score noise half-width");
  synth->add_option("--gap-period", sp.detection_gap_period,
                    "Drop every k-th target detection (0 keeps all)");

  // validate
  auto* validate = app.add_subcommand("validate", "Check record files and split counts");
  std::vector<std::string> val_files;
  std::string val_manifest, val_dir;
  validate->add_option("--records", val_files, "Record files to validate, repeatable")
      ->check(CLI::ExistingFile);
  auto* val_manifest_opt =
      validate->add_option("--manifest", val_manifest, "Manifest with expected split counts")
          ->check(CLI::ExistingFile);
  validate->add_option("--dir", val_dir, "Directory holding <split>.jsonl files")
      ->check(CLI::ExistingDirectory)
      ->needs(val_manifest_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    const stvg::ToolkitConfig cfg =
        config_path.empty() ? stvg::load_config_from_env() : stvg::load_config(config_path);

    if (*eval) {
      stvg::EvalOptions opt = cfg.eval;
      if (eval_thr_opt->count() > 0) opt.thresholds = eval_thresholds;
      if (eval_cmp_opt->count() > 0) opt.comparison = stvg::parse_comparison(eval_cmp);
      if (eval_missing_opt->count() > 0) {
        opt.missing = stvg::parse_missing_policy(eval_missing);
      }
      const auto preds = tubes_of(stvg::read_records(eval_pred), "prediction");
      const auto gts = tubes_of(stvg::read_records(eval_gt), "groundtruth");
      const stvg::MetricReport report = stvg::evaluate_dataset(preds, gts, opt);
      std::cout << stvg::format_report_table(report, eval_label);
      if (!eval_report.empty()) {
        ensure_parent_dir(eval_report);
        stvg::write_report(report, eval_report);
      }
      return 0;
    }

    if (*fuse_cmd) {
      const stvg::GapPolicy policy = fuse_policy_opt->count() > 0
                                         ? stvg::parse_gap_policy(fuse_policy)
                                         : cfg.fusion_policy;
      const auto temporal = stvg::read_records(fuse_temporal);
      const auto spatial = stvg::read_records(fuse_spatial);
      std::map<std::string, const stvg::GroundingRecord*> spatial_by_id;
      for (const auto& r : spatial) {
        if (!spatial_by_id.emplace(r.video_id, &r).second) {
          throw stvg::ValidationError("duplicate spatial record for video '" +
                                      r.video_id + "'");
        }
      }
      std::vector<stvg::GroundingRecord> fused;
      fused.reserve(temporal.size());
      for (const auto& t : temporal) {
        const auto it = spatial_by_id.find(t.video_id);
        if (it == spatial_by_id.end()) {
          throw stvg::ValidationError("no spatial record for video '" + t.video_id + "'");
        }
        fused.push_back(stvg::GroundingRecord::from_tube(
            stvg::fuse(t.tube(), it->second->tube(), policy)));
      }
      ensure_parent_dir(fuse_out);
      stvg::write_records(fused, fuse_out);
      std::cout << "fused " << fused.size() << " video(s) under the "
                << stvg::gap_policy_name(policy) << " policy into " << fuse_out << "\n";
      return 0;
    }

    if (*link) {
      stvg::LinkParams params = cfg.link;
      if (link_thr_opt->count() > 0) params.iou_continuity_threshold = link_thr;
      if (link_w_opt->count() > 0) params.score_weight = link_w;
      if (link_gap_opt->count() > 0) params.max_gap_frames = link_gap;
      if (link_min_opt->count() > 0) params.min_tube_length = link_min;
      if (link_max_opt->count() > 0) params.max_tubes = link_max;
      std::vector<stvg::GroundingRecord> out;
      std::size_t n_videos = 0;
      for (const auto& r : stvg::read_records(link_in)) {
        if (r.detections.empty()) {
          throw stvg::ValidationError("record '" + r.video_id + "' has no detections");
        }
        ++n_videos;
        auto tubes = stvg::link_detections(r.detections, params, r.video_id);
        if (link_best && tubes.size() > 1) {
          std::size_t best = 0;
          for (std::size_t i = 1; i < tubes.size(); ++i) {
            if (tubes[i].mean_score > tubes[best].mean_score) best = i;
          }
          tubes = {tubes[best]};
        }
        for (const auto& lt : tubes) {
          stvg::GroundingRecord tube_rec = stvg::GroundingRecord::from_tube(lt.tube);
          tube_rec.query = r.query;
          tube_rec.source = "linker";
          tube_rec.score = lt.mean_score;
          tube_rec.meta["n_interpolated"] =
              std::to_string(lt.interpolated_frames.size());
          out.push_back(std::move(tube_rec));
        }
      }
      ensure_parent_dir(link_out);
      stvg::write_records(out, link_out);
      std::cout << "linked " << out.size() << " tube(s) across " << n_videos
                << " video(s) into " << link_out << "\n";
      return 0;
    }

    if (*moments) {
      const stvg::ContrastiveNormalization norm =
          m_norm_opt->count() > 0 ? stvg::parse_contrastive_normalization(m_norm)
                                  : cfg.contrastive_normalization;
      std::vector<stvg::GroundingRecord> out;
      for (const auto& r : stvg::read_records(m_in)) {
        if (!r.scores.has_value()) {
          throw stvg::ValidationError("record '" + r.video_id + "' carries no scores");
        }
        const stvg::MomentScores& sc = *r.scores;
        stvg::GroundingRecord picked;
        picked.video_id = r.video_id;
        picked.query = r.query;
        stvg::ClipSpan span;
        if (m_task == "select") {
          if (sc.predicted_iou.empty()) {
            throw stvg::ValidationError("record '" + r.video_id +
                                        "' carries no moment map scores");
          }
          const stvg::MomentSelection sel = stvg::select_moment(
              stvg::MomentMap{sc.n_clips, sc.predicted_iou, sc.contrastive}, norm);
          span = sel.span;
          picked.score = sel.combined_score;
          picked.source = "moment_map";
          picked.meta["normalization"] = stvg::contrastive_normalization_name(norm);
        } else {
          if (sc.p_start.empty()) {
            throw stvg::ValidationError("record '" + r.video_id +
                                        "' carries no start/end scores");
          }
          span = stvg::decode_start_end({sc.p_start, sc.p_end});
          picked.score = sc.p_start[static_cast<std::size_t>(span.first_clip)] *
                         sc.p_end[static_cast<std::size_t>(span.last_clip)];
          picked.source = "start_end";
        }
        picked.meta["span_clips"] = std::to_string(span.first_clip) + ".." +
                                    std::to_string(span.last_clip);
        if (sc.clip_length_frames > 0) {
          picked.segment = stvg::Segment{span.first_clip * sc.clip_length_frames,
                                         (span.last_clip + 1) * sc.clip_length_frames - 1};
          // No boxes accompany the segment, so the tube is temporal-only.
          picked.partial = true;
        }
        out.push_back(std::move(picked));
      }
      ensure_parent_dir(m_out);
      stvg::write_records(out, m_out);
      std::cout << "picked spans for " << out.size() << " record(s) into " << m_out << "\n";
      return 0;
    }

    if (*loss) {
      stvg::LossWeights w = cfg.loss_weights;
      if (w_lambda_opt->count() > 0) w.lambda = w_lambda;
      if (w_alpha_opt->count() > 0) w.alpha = w_alpha;
      if (w_beta_opt->count() > 0) w.beta = w_beta;
      if (w_gamma_opt->count() > 0) w.gamma = w_gamma;
      if (w_theta_opt->count() > 0) w.theta = w_theta;
      const ordered_json in = read_json_file(loss_in);
      ordered_json result;
      result["kind"] = loss_kind;
      if (loss_kind == "mmn_iou") {
        result["loss"] = stvg::mmn_iou_loss(number_list(in, "predicted_iou"),
                                            number_list(in, "target_iou"));
      } else if (loss_kind == "contrastive") {
        const auto cl = stvg::contrastive_losses({number_matrix(in, "similarity")});
        result["video_loss"] = cl.video_loss;
        result["sentence_loss"] = cl.sentence_loss;
      } else if (loss_kind == "mmn_total") {
        const double iou = stvg::mmn_iou_loss(number_list(in, "predicted_iou"),
                                              number_list(in, "target_iou"));
        const auto cl = stvg::contrastive_losses({number_matrix(in, "similarity")});
        result["iou_loss"] = iou;
        result["video_loss"] = cl.video_loss;
        result["sentence_loss"] = cl.sentence_loss;
        result["lambda"] = w.lambda;
        result["total"] = stvg::mmn_total(iou, cl.video_loss, cl.sentence_loss, w);
      } else if (loss_kind == "box") {
        const auto bl = stvg::box_losses(box_list(in, "pred_boxes"), box_list(in, "gt_boxes"));
        result["l1_loss"] = bl.l1_loss;
        result["giou_loss"] = bl.giou_loss;
      } else if (loss_kind == "kl") {
        result["loss"] = stvg::kl_temporal_loss(dists_of(in, "p_start", "p_end"),
                                                dists_of(in, "target_start", "target_end"));
      } else if (loss_kind == "attention") {
        stvg::AttentionRow row;
        row.attention = number_list(in, "attention");
        if (in.contains("seg_start")) row.seg_start = in["seg_start"].get<std::int64_t>();
        if (in.contains("seg_end")) row.seg_end = in["seg_end"].get<std::int64_t>();
        result["loss"] = stvg::guided_attention_loss(row);
      } else {
        const auto bl = stvg::box_losses(box_list(in, "pred_boxes"), box_list(in, "gt_boxes"));
        const double kl = stvg::kl_temporal_loss(dists_of(in, "p_start", "p_end"),
                                                 dists_of(in, "target_start", "target_end"));
        stvg::AttentionRow row;
        row.attention = number_list(in, "attention");
        if (in.contains("seg_start")) row.seg_start = in["seg_start"].get<std::int64_t>();
        if (in.contains("seg_end")) row.seg_end = in["seg_end"].get<std::int64_t>();
        const double att = stvg::guided_attention_loss(row);
        result["box_loss"] = bl.l1_loss;
        result["giou_loss"] = bl.giou_loss;
        result["kl_loss"] = kl;
        result["attention_loss"] = att;
        result["alpha"] = w.alpha;
        result["beta"] = w.beta;
        result["gamma"] = w.gamma;
        result["theta"] = w.theta;
        result["total"] = stvg::tubedetr_total(bl.l1_loss, bl.giou_loss, kl, att, w);
      }
      std::cout << result.dump(2) << "\n";
      return 0;
    }

    if (*synth) {
      const stvg::SynthDataset data = stvg::synth_dataset(synth_seed, sp);
      fs::create_directories(synth_out);
      const fs::path dir(synth_out);
      stvg::write_records(data.gts, dir / "gt.jsonl");
      stvg::write_records(data.model_a, dir / "model_a.jsonl");
      stvg::write_records(data.model_b, dir / "model_b.jsonl");
      stvg::write_records(data.detections, dir / "detections.jsonl");
      std::cout << "wrote " << data.gts.size() << " video(s) to " << synth_out
                << " (gt, model_a, model_b, detections)\n";
      return 0;
    }

    if (*validate) {
      if (val_files.empty() && val_manifest.empty()) {
        throw std::invalid_argument("validate needs --records and/or --manifest");
      }
      for (const auto& f : val_files) {
        std::cout << f << ": " << stvg::read_records(f).size() << " record(s) ok\n";
      }
      if (!val_manifest.empty()) {
        if (val_dir.empty()) {
          throw std::invalid_argument("--manifest needs --dir with <split>.jsonl files");
        }
        const stvg::DatasetManifest manifest = stvg::read_manifest(val_manifest);
        std::map<std::string, std::int64_t> counts;
        for (const auto& [split, expected] : manifest.splits) {
          (void)expected;
          const fs::path file = fs::path(val_dir) / (split + ".jsonl");
          if (fs::exists(file)) {
            counts[split] = static_cast<std::int64_t>(stvg::read_records(file).size());
          }
        }
        const stvg::ManifestReport report = stvg::validate_manifest(manifest, counts);
        std::cout << stvg::format_manifest_report(report);
        if (!report.all_pass) return 4;
      }
      return 0;
    }
  } catch (const stvg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const stvg::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
