#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fspectra/ambient.hpp"

namespace fspectra::cli {

using nlohmann::json;

struct ChartSpec {
  std::string family = "sphere";  // sphere | ellipsoid
  double radius = 1.0;
  double a = 1.0, b = 1.0, c = 1.0;
};

struct ImmersionSpec {
  std::string key;
  std::optional<double> radius;  // derived from the ambient when absent
  double t0 = 0.0;
  double major = 2.0;
  double minor = 0.7;
  std::string off;
  ChartSpec chart;
};

struct MeshSpec {
  int subdiv = 4;
  int segments = 128;
  int n_u = 48;
  int n_v = 24;
};

struct SolverSpec {
  int eigen_count = 16;
  std::uint64_t seed = 0;
  std::string method = "auto";  // auto | dense | shift-invert
  int dense_limit = 1200;
  int hodge_window = 12;
  double tolerance = 1e-10;
};

struct HypothesisSpec {
  double eta = 0.0;
  int combinations = 64;
  int quadrature_subdiv = 3;
  int quadrature_segments = 128;
};

struct ExpectSpec {
  std::optional<int> index;
  std::optional<int> b1;
};

struct SceneConfig {
  std::string name;
  std::string ambient;
  ImmersionSpec immersion;
  MeshSpec mesh;
  SolverSpec solver;
  std::vector<std::string> checks = {"index", "betti", "bound"};
  HypothesisSpec hypothesis;
  ExpectSpec expect;
  std::filesystem::path base_dir;  // relative OFF paths resolve here
};

/// Schema-validated parse; unknown keys and wrong types raise schema errors
/// naming the offending key.
SceneConfig parse_scene(const json& j, const std::filesystem::path& base_dir = {});
SceneConfig load_scene(const std::filesystem::path& path);
/// Full echo, defaults included.
json to_json(const SceneConfig& c);

/// "gaussian:3", "sphere-cylinder:k=2,j=1,lambda=1", "cpn-cylinder:n=1,j=0",
/// "hpp-cylinder:p=1".
AmbientSpace parse_ambient(const std::string& spec);

struct BuiltinScene {
  std::string name;
  std::string description;
  json config;
};
const std::vector<BuiltinScene>& builtin_scenes();
std::optional<SceneConfig> builtin_scene(const std::string& name);

}  // namespace fspectra::cli
