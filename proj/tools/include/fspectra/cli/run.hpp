#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "fspectra/cli/scene.hpp"

namespace fspectra::cli {

struct RunOptions {
  std::optional<std::uint64_t> seed;       // overrides the config seed
  std::optional<std::filesystem::path> out;  // CSV artifacts are written next to it
  bool timings = true;
};

struct RunResult {
  json report;
  bool passed = false;
};

RunResult run_scene(SceneConfig config, const RunOptions& options = {});

/// Closed-form and finite-difference identity checks of one ambient.
RunResult identities(const std::string& ambient, int samples, std::uint64_t seed);

std::string version();

}  // namespace fspectra::cli
