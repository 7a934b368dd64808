#include "fspectra/cli/scene.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fspectra/error.hpp"

namespace fspectra::cli {
namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::kSchema, msg); }

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) schema("'" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) schema("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const std::string& key, const std::string& where, T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw std::invalid_argument("number expected");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw std::invalid_argument("integer expected");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw std::invalid_argument("string expected");
    }
    out = v.get<T>();
  } catch (const std::exception& e) {
    schema("key '" + key + "' in " + where + ": " + e.what());
  }
}

void require_positive(int v, const std::string& key) {
  if (v <= 0) schema("key '" + key + "' must be positive");
}

const std::set<std::string> kChecks = {"index", "betti", "hypothesis", "identities", "gap", "bound"};

std::map<std::string, std::string> split_params(const std::string& text, std::string& positional) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (!positional.empty()) throw Error(ErrorCode::kParse, "ambient: more than one positional value");
      positional = item;
    } else {
      out[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return out;
}

double to_number(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "ambient: bad value for " + key + ": '" + s + "'");
  }
}

int to_int(const std::string& s, const std::string& key) {
  const double v = to_number(s, key);
  if (v != std::floor(v)) throw Error(ErrorCode::kParse, "ambient: " + key + " must be an integer");
  return static_cast<int>(v);
}

}  // namespace

AmbientSpace parse_ambient(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::string positional;
  auto params = split_params(colon == std::string::npos ? "" : spec.substr(colon + 1), positional);
  auto take = [&](const std::string& key, const std::string& fallback) {
    auto it = params.find(key);
    std::string v = fallback;
    if (it != params.end()) {
      v = it->second;
      params.erase(it);
    }
    return v;
  };
  auto finish = [&](AmbientSpace a) {
    if (!params.empty()) throw Error(ErrorCode::kParse, "ambient: unknown parameter '" + params.begin()->first + "'");
    return a;
  };
  static const std::set<std::string> kinds = {"gaussian", "sphere-cylinder", "cpn-cylinder", "hpp-cylinder"};
  if (!kinds.count(kind)) throw Error(ErrorCode::kParse, "unknown ambient kind '" + kind + "'");
  if (kind == "gaussian") {
    const std::string n = positional.empty() ? take("n", "3") : positional;
    return finish(AmbientSpace::gaussian(to_int(n, "n"), to_number(take("lambda", "1"), "lambda")));
  }
  if (!positional.empty()) throw Error(ErrorCode::kParse, "ambient: " + kind + " takes key=value parameters only");
  if (kind == "sphere-cylinder") {
    const int k = to_int(take("k", "2"), "k");
    const int j = to_int(take("j", "1"), "j");
    return finish(AmbientSpace::sphere_cylinder(k, j, to_number(take("lambda", "1"), "lambda")));
  }
  if (kind == "cpn-cylinder") {
    const int n = to_int(take("n", "1"), "n");
    return finish(AmbientSpace::projective_cylinder(ProjectiveFamily::kComplex, n, to_int(take("j", "0"), "j")));
  }
  return finish(AmbientSpace::projective_cylinder(ProjectiveFamily::kQuaternionic, to_int(take("p", "1"), "p"),
                                                 to_int(take("j", "0"), "j")));
}

SceneConfig parse_scene(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j, "scene", {"name", "ambient", "immersion", "mesh", "solver", "checks", "hypothesis", "expect"});
  SceneConfig c;
  c.base_dir = base_dir;
  read(j, "name", "scene", c.name);
  if (!j.contains("ambient")) schema("missing key 'ambient'");
  read(j, "ambient", "scene", c.ambient);
  if (!j.contains("immersion")) schema("missing key 'immersion'");

  const json& im = j.at("immersion");
  if (!im.is_object() || !im.contains("key")) schema("'immersion' needs a 'key'");
  read(im, "key", "immersion", c.immersion.key);
  const std::string& key = c.immersion.key;
  if (key == "shrinker-sphere") {
    reject_unknown(im, "immersion", {"key", "radius"});
  } else if (key == "slice-sphere") {
    reject_unknown(im, "immersion", {"key", "t0"});
  } else if (key == "product(sphere, circle)") {
    reject_unknown(im, "immersion", {"key", "radius"});
  } else if (key == "torus-of-revolution") {
    reject_unknown(im, "immersion", {"key", "major", "minor"});
  } else if (key == "user-chart") {
    reject_unknown(im, "immersion", {"key", "off", "chart"});
    if (!im.contains("off")) schema("user-chart needs key 'off'");
    read(im, "off", "immersion", c.immersion.off);
    if (im.contains("chart")) {
      const json& ch = im.at("chart");
      reject_unknown(ch, "immersion.chart", {"family", "radius", "a", "b", "c"});
      read(ch, "family", "immersion.chart", c.immersion.chart.family);
      if (c.immersion.chart.family != "sphere" && c.immersion.chart.family != "ellipsoid") {
        schema("key 'family' in immersion.chart must be 'sphere' or 'ellipsoid'");
      }
      read(ch, "radius", "immersion.chart", c.immersion.chart.radius);
      read(ch, "a", "immersion.chart", c.immersion.chart.a);
      read(ch, "b", "immersion.chart", c.immersion.chart.b);
      read(ch, "c", "immersion.chart", c.immersion.chart.c);
    }
  } else {
    schema("unknown immersion key '" + key + "'");
  }
  if (im.contains("radius")) {
    double r = 0.0;
    read(im, "radius", "immersion", r);
    c.immersion.radius = r;
  }
  read(im, "t0", "immersion", c.immersion.t0);
  read(im, "major", "immersion", c.immersion.major);
  read(im, "minor", "immersion", c.immersion.minor);

  if (j.contains("mesh")) {
    const json& m = j.at("mesh");
    reject_unknown(m, "mesh", {"subdiv", "segments", "n_u", "n_v"});
    read(m, "subdiv", "mesh", c.mesh.subdiv);
    read(m, "segments", "mesh", c.mesh.segments);
    read(m, "n_u", "mesh", c.mesh.n_u);
    read(m, "n_v", "mesh", c.mesh.n_v);
    if (c.mesh.subdiv < 0) schema("key 'subdiv' must be >= 0");
    require_positive(c.mesh.segments, "segments");
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    reject_unknown(s, "solver", {"eigen_count", "seed", "method", "dense_limit", "hodge_window", "tolerance"});
    read(s, "eigen_count", "solver", c.solver.eigen_count);
    read(s, "seed", "solver", c.solver.seed);
    read(s, "method", "solver", c.solver.method);
    read(s, "dense_limit", "solver", c.solver.dense_limit);
    read(s, "hodge_window", "solver", c.solver.hodge_window);
    read(s, "tolerance", "solver", c.solver.tolerance);
    if (c.solver.method != "auto" && c.solver.method != "dense" && c.solver.method != "shift-invert") {
      schema("key 'method' in solver: unknown method '" + c.solver.method + "' (auto, dense, shift-invert)");
    }
    require_positive(c.solver.eigen_count, "eigen_count");
    require_positive(c.solver.hodge_window, "hodge_window");
  }
  if (j.contains("checks")) {
    const json& ch = j.at("checks");
    if (!ch.is_array()) schema("key 'checks' must be an array");
    c.checks.clear();
    for (const auto& v : ch) {
      if (!v.is_string() || !kChecks.count(v.get<std::string>())) schema("key 'checks' has an unknown entry " + v.dump());
      c.checks.push_back(v.get<std::string>());
    }
  }
  if (j.contains("hypothesis")) {
    const json& h = j.at("hypothesis");
    reject_unknown(h, "hypothesis", {"eta", "combinations", "quadrature_subdiv", "quadrature_segments"});
    read(h, "eta", "hypothesis", c.hypothesis.eta);
    read(h, "combinations", "hypothesis", c.hypothesis.combinations);
    read(h, "quadrature_subdiv", "hypothesis", c.hypothesis.quadrature_subdiv);
    read(h, "quadrature_segments", "hypothesis", c.hypothesis.quadrature_segments);
  }
  if (j.contains("expect")) {
    const json& e = j.at("expect");
    reject_unknown(e, "expect", {"index", "b1"});
    if (e.contains("index")) {
      int v = 0;
      read(e, "index", "expect", v);
      c.expect.index = v;
    }
    if (e.contains("b1")) {
      int v = 0;
      read(e, "b1", "expect", v);
      c.expect.b1 = v;
    }
  }
  return c;
}

SceneConfig load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open scene " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return parse_scene(j, path.parent_path());
}

json to_json(const SceneConfig& c) {
  json im = {{"key", c.immersion.key}};
  const std::string& key = c.immersion.key;
  if (key == "shrinker-sphere" || key == "product(sphere, circle)") {
    if (c.immersion.radius) im["radius"] = *c.immersion.radius;
  } else if (key == "slice-sphere") {
    im["t0"] = c.immersion.t0;
  } else if (key == "torus-of-revolution") {
    im["major"] = c.immersion.major;
    im["minor"] = c.immersion.minor;
  } else if (key == "user-chart") {
    im["off"] = c.immersion.off;
    im["chart"] = {{"family", c.immersion.chart.family},
                   {"radius", c.immersion.chart.radius},
                   {"a", c.immersion.chart.a},
                   {"b", c.immersion.chart.b},
                   {"c", c.immersion.chart.c}};
  }
  json expect = json::object();
  if (c.expect.index) expect["index"] = *c.expect.index;
  if (c.expect.b1) expect["b1"] = *c.expect.b1;
  return {
      {"name", c.name},
      {"ambient", c.ambient},
      {"immersion", im},
      {"mesh", {{"subdiv", c.mesh.subdiv}, {"segments", c.mesh.segments}, {"n_u", c.mesh.n_u}, {"n_v", c.mesh.n_v}}},
      {"solver",
       {{"eigen_count", c.solver.eigen_count},
        {"seed", c.solver.seed},
        {"method", c.solver.method},
        {"dense_limit", c.solver.dense_limit},
        {"hodge_window", c.solver.hodge_window},
        {"tolerance", c.solver.tolerance}}},
      {"checks", c.checks},
      {"hypothesis",
       {{"eta", c.hypothesis.eta},
        {"combinations", c.hypothesis.combinations},
        {"quadrature_subdiv", c.hypothesis.quadrature_subdiv},
        {"quadrature_segments", c.hypothesis.quadrature_segments}}},
      {"expect", expect},
  };
}

const std::vector<BuiltinScene>& builtin_scenes() {
  static const std::vector<BuiltinScene> scenes = {
      {"shrinker-sphere", "round sphere of radius sqrt(2) in Gaussian R^3",
       json{{"name", "shrinker-sphere"},
            {"ambient", "gaussian:3"},
            {"immersion", {{"key", "shrinker-sphere"}}},
            {"mesh", {{"subdiv", 4}}},
            {"checks", {"index", "betti", "bound", "identities"}},
            {"expect", {{"index", 4}, {"b1", 0}}}}},
      {"slice-sphere", "S^2 x {0} in S^2 x R, the equality case",
       json{{"name", "slice-sphere"},
            {"ambient", "sphere-cylinder:k=2,j=1,lambda=1"},
            {"immersion", {{"key", "slice-sphere"}}},
            {"mesh", {{"subdiv", 4}}},
            {"checks", {"index", "betti", "bound", "identities", "gap"}},
            {"expect", {{"index", 1}, {"b1", 0}}}}},
      {"product-s2xs1", "S^2(1) x S^1(1) in S^2 x R^2, composed spectrally",
       json{{"name", "product-s2xs1"},
            {"ambient", "sphere-cylinder:k=2,j=2,lambda=1"},
            {"immersion", {{"key", "product(sphere, circle)"}}},
            {"mesh", {{"subdiv", 4}, {"segments", 256}}},
            {"checks", {"index", "betti", "bound", "hypothesis", "identities", "gap"}},
            {"expect", {{"index", 3}, {"b1", 1}}}}},
      {"torus-hodge", "torus of revolution in Gaussian R^3, weighted Hodge kernel",
       json{{"name", "torus-hodge"},
            {"ambient", "gaussian:3"},
            {"immersion", {{"key", "torus-of-revolution"}, {"major", 2.0}, {"minor", 0.7}}},
            {"mesh", {{"n_u", 48}, {"n_v", 24}}},
            {"checks", {"betti"}},
            {"expect", {{"b1", 2}}}}},
  };
  return scenes;
}

std::optional<SceneConfig> builtin_scene(const std::string& name) {
  for (const auto& s : builtin_scenes()) {
    if (s.name == name) return parse_scene(s.config);
  }
  return std::nullopt;
}

}  // namespace fspectra::cli
