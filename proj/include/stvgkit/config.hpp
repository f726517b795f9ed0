#pragma once

#include <filesystem>

#include "stvgkit/fusion.hpp"
#include "stvgkit/linking.hpp"
#include "stvgkit/losses.hpp"
#include "stvgkit/metrics.hpp"
#include "stvgkit/moments.hpp"

namespace stvg {

// Defaults used by the command line tool. Every field can be overridden by
// a JSON config file and again by command line flags.
struct ToolkitConfig {
  LinkParams link;
  LossWeights loss_weights;
  GapPolicy fusion_policy = GapPolicy::Nearest;
  EvalOptions eval;
  ContrastiveNormalization contrastive_normalization = ContrastiveNormalization::Sigmoid;
};

// Environment variable naming the config file picked up when no --config
// flag is given.
inline constexpr const char* kConfigEnvVar = "STVGKIT_CONFIG";

// Loads a config file; keys not present keep their defaults, unknown keys
// are an error. Throws IoError when the file cannot be read or parsed.
ToolkitConfig load_config(const std::filesystem::path& path);

// Reads the file named by $STVGKIT_CONFIG when set, else returns defaults.
ToolkitConfig load_config_from_env();

}  // namespace stvg
