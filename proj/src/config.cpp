#include "stvgkit/config.hpp"

#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "stvgkit/errors.hpp"

namespace stvg {

namespace {

using nlohmann::json;

double number_field(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw IoError(std::string("config field '") + key + "' must be a number");
  }
  return obj[key].get<double>();
}

std::int64_t integer_field(const json& obj, const char* key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw IoError(std::string("config field '") + key + "' must be an integer");
  }
  return obj[key].get<std::int64_t>();
}

std::string string_field(const json& obj, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    throw IoError(std::string("config field '") + key + "' must be a string");
  }
  return obj[key].get<std::string>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw IoError("unknown config field '" + where + key + "'");
  }
}

}  // namespace

ToolkitConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "' for reading");
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw IoError(path.string() + ": config must be a JSON object");

  ToolkitConfig cfg;
  try {
    reject_unknown(j, {"link", "loss_weights", "fusion", "eval", "moments"}, "");

    if (j.contains("link")) {
      const json& link = j["link"];
      reject_unknown(link,
                     {"iou_continuity_threshold", "score_weight", "max_gap_frames",
                      "min_tube_length", "max_tubes"},
                     "link.");
      cfg.link.iou_continuity_threshold =
          number_field(link, "iou_continuity_threshold", cfg.link.iou_continuity_threshold);
      cfg.link.score_weight = number_field(link, "score_weight", cfg.link.score_weight);
      cfg.link.max_gap_frames = integer_field(link, "max_gap_frames", cfg.link.max_gap_frames);
      cfg.link.min_tube_length =
          integer_field(link, "min_tube_length", cfg.link.min_tube_length);
      cfg.link.max_tubes = integer_field(link, "max_tubes", cfg.link.max_tubes);
    }
    if (j.contains("loss_weights")) {
      const json& w = j["loss_weights"];
      reject_unknown(w, {"lambda", "alpha", "beta", "gamma", "theta"}, "loss_weights.");
      cfg.loss_weights.lambda = number_field(w, "lambda", cfg.loss_weights.lambda);
      cfg.loss_weights.alpha = number_field(w, "alpha", cfg.loss_weights.alpha);
      cfg.loss_weights.beta = number_field(w, "beta", cfg.loss_weights.beta);
      cfg.loss_weights.gamma = number_field(w, "gamma", cfg.loss_weights.gamma);
      cfg.loss_weights.theta = number_field(w, "theta", cfg.loss_weights.theta);
    }
    if (j.contains("fusion")) {
      const json& f = j["fusion"];
      reject_unknown(f, {"policy"}, "fusion.");
      cfg.fusion_policy = parse_gap_policy(
          string_field(f, "policy", gap_policy_name(cfg.fusion_policy)));
    }
    if (j.contains("eval")) {
      const json& e = j["eval"];
      reject_unknown(e, {"thresholds", "comparison", "missing"}, "eval.");
      if (e.contains("thresholds")) {
        if (!e["thresholds"].is_array() || e["thresholds"].empty()) {
          throw IoError("config field 'eval.thresholds' must be a nonempty array");
        }
        cfg.eval.thresholds.clear();
        for (const auto& t : e["thresholds"]) {
          if (!t.is_number()) {
            throw IoError("config field 'eval.thresholds' must hold numbers");
          }
          cfg.eval.thresholds.push_back(t.get<double>());
        }
      }
      cfg.eval.comparison =
          parse_comparison(string_field(e, "comparison", comparison_name(cfg.eval.comparison)));
      cfg.eval.missing = parse_missing_policy(
          string_field(e, "missing", missing_policy_name(cfg.eval.missing)));
    }
    if (j.contains("moments")) {
      const json& m = j["moments"];
      reject_unknown(m, {"contrastive_normalization"}, "moments.");
      cfg.contrastive_normalization = parse_contrastive_normalization(
          string_field(m, "contrastive_normalization",
                       contrastive_normalization_name(cfg.contrastive_normalization)));
    }
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return cfg;
}

ToolkitConfig load_config_from_env() {
  const char* path = std::getenv(kConfigEnvVar);
  if (path == nullptr || *path == '\0') return ToolkitConfig{};
  return load_config(path);
}

}  // namespace stvg
