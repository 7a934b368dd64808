#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"

#include "fspectra/cli/run.hpp"
#include "fspectra/cli/scene.hpp"
#include "fspectra/parallel.hpp"

using namespace fspectra;
using namespace fspectra::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kScenes = FSPECTRA_SCENES_DIR;
const fs::path kData = FSPECTRA_TEST_DATA_DIR;

json minimal() {
  return json::parse(R"({"name": "t", "ambient": "gaussian:3", "immersion": {"key": "shrinker-sphere"}})");
}

std::string schema_message(const json& j) {
  try {
    parse_scene(j);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchema);
    return e.what();
  }
  FAIL("accepted an invalid scene");
  return {};
}

json without_timings(json report) {
  report.erase("timings");
  return report;
}

}  // namespace

TEST_CASE("scene defaults") {
  const SceneConfig c = parse_scene(minimal());
  CHECK(c.name == "t");
  CHECK(c.mesh.subdiv == 4);
  CHECK(c.solver.eigen_count == 16);
  CHECK(c.solver.method == "auto");
  CHECK(c.hypothesis.eta == 0.0);
  CHECK(c.hypothesis.combinations == 64);
  CHECK(c.checks == std::vector<std::string>{"index", "betti", "bound"});
  CHECK_FALSE(c.expect.index.has_value());
}

TEST_CASE("schema errors name the offending key") {
  json a = minimal();
  a["mesh"] = {{"subdiv", "four"}};
  CHECK(schema_message(a).find("subdiv") != std::string::npos);

  json b = minimal();
  b["solver"] = {{"eigen_cuont", 8}};
  CHECK(schema_message(b).find("eigen_cuont") != std::string::npos);

  json c = minimal();
  c["immersion"]["major"] = 2.0;
  CHECK(schema_message(c).find("major") != std::string::npos);

  json d = minimal();
  d["checks"] = {"index", "everything"};
  CHECK(schema_message(d).find("everything") != std::string::npos);

  json e = minimal();
  e["solver"] = {{"method", "lanczos"}};
  CHECK(schema_message(e).find("lanczos") != std::string::npos);

  json f = minimal();
  f["immersion"] = {{"key", "user-chart"}};
  CHECK(schema_message(f).find("off") != std::string::npos);

  json g = minimal();
  g.erase("ambient");
  CHECK(schema_message(g).find("ambient") != std::string::npos);

  json h = minimal();
  h["immersion"]["key"] = "klein-bottle";
  CHECK(schema_message(h).find("klein-bottle") != std::string::npos);
}

TEST_CASE("ambient strings") {
  const AmbientSpace g = parse_ambient("gaussian:3");
  CHECK(g.kind() == AmbientKind::kGaussianEuclidean);
  CHECK(g.embed_dim() == 3);
  CHECK(g.lambda() == 1.0);
  CHECK(parse_ambient("gaussian:n=4,lambda=0.5").lambda() == 0.5);

  const AmbientSpace s = parse_ambient("sphere-cylinder:k=3,j=2,lambda=2");
  CHECK(s.kind() == AmbientKind::kSphereCylinder);
  CHECK(s.compact_dim() == 3);
  CHECK(s.euclidean_dim() == 2);
  CHECK(s.sphere_radius() == doctest::Approx(1.0));

  CHECK(parse_ambient("cpn-cylinder:n=2,j=1").lambda() == doctest::Approx(6.0));
  CHECK(parse_ambient("hpp-cylinder:p=1,j=1").lambda() == doctest::Approx(12.0));

  check_error(ErrorCode::kParse, [] { parse_ambient("torus:3"); });
  check_error(ErrorCode::kParse, [] { parse_ambient("gaussian:3,mu=2"); });
  check_error(ErrorCode::kParse, [] { parse_ambient("gaussian:2.5"); });
  check_error(ErrorCode::kParse, [] { parse_ambient("sphere-cylinder:2"); });
  check_error(ErrorCode::kParse, [] { parse_ambient("gaussian:n=x"); });
}

TEST_CASE("scene files mirror the built-in scenes") {
  REQUIRE(builtin_scenes().size() == 4);
  for (const auto& s : builtin_scenes()) {
    CAPTURE(s.name);
    const fs::path file = kScenes / (s.name + ".json");
    REQUIRE(fs::exists(file));
    const auto builtin = builtin_scene(s.name);
    REQUIRE(builtin.has_value());
    CHECK(to_json(load_scene(file)) == to_json(*builtin));
    CHECK(to_json(parse_scene(to_json(*builtin))) == to_json(*builtin));
  }
  CHECK_FALSE(builtin_scene("no-such-scene").has_value());
  CHECK_NOTHROW(load_scene(kScenes / "user-ellipsoid.json"));
  check_error(ErrorCode::kParse, [] { load_scene(kData / "malformed.json"); });
  check_error(ErrorCode::kParse, [] { load_scene(kData / "does-not-exist.json"); });
}

TEST_CASE("slice scene report") {
  RunOptions opts;
  opts.timings = false;
  const RunResult r = run_scene(*builtin_scene("slice-sphere"), opts);
  CHECK(r.passed);
  CHECK(r.report["passed"] == true);
  CHECK(r.report["ind_f"] == 1);
  CHECK(r.report["b1"] == 0);
  CHECK(r.report["bound"]["ceiling"] == 0);
  for (const auto& [name, check] : r.report["checks"].items()) {
    CAPTURE(name);
    CHECK(check["status"] == "pass");
  }
  CHECK(std::abs(r.report["checks"]["gap"]["max_difference"].get<double>()) < 1e-8);

  // determinism modulo timings
  const RunResult again = run_scene(*builtin_scene("slice-sphere"), opts);
  CHECK(without_timings(again.report) == without_timings(r.report));
}

TEST_CASE("product scene report and artifacts") {
  const fs::path dir = fs::temp_directory_path() / "fspectra_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  RunOptions opts;
  opts.out = dir / "product.json";
  SceneConfig c = *builtin_scene("product-s2xs1");
  c.mesh.subdiv = 3;
  c.mesh.segments = 128;
  const RunResult r = run_scene(c, opts);
  CHECK(r.passed);
  CHECK(r.report["ind_f"] == 3);
  CHECK(r.report["b1"] == 1);
  CHECK(r.report["bound"]["ceiling"] == 1);
  CHECK(r.report["bound"]["d"] == 5);
  const json& h = r.report["checks"]["hypothesis"];
  CHECK(h["status"] == "pass");
  CHECK(h["margin"].get<double>() == doctest::Approx(16 * M_PI * M_PI * std::exp(-0.5)).epsilon(1e-8));
  CHECK(h["conclusion"]["holds"] == true);
  CHECK(fs::exists(dir / "product.spectrum.csv"));
  CHECK(r.report["timings"].contains("total"));

  c.hypothesis.eta = -1e3;
  c.checks = {"hypothesis"};
  const RunResult bad = run_scene(c);
  CHECK_FALSE(bad.passed);
  CHECK(bad.report["checks"]["hypothesis"]["status"] == "fail");
}

TEST_CASE("seed override is recorded") {
  SceneConfig c = *builtin_scene("torus-hodge");
  c.mesh.n_u = 24;
  c.mesh.n_v = 12;
  RunOptions opts;
  opts.seed = 42;
  opts.timings = false;
  const RunResult r = run_scene(c, opts);
  CHECK(r.passed);
  CHECK(r.report["b1"] == 2);
  CHECK(r.report["config"]["solver"]["seed"] == 42);
}

TEST_CASE("identities report") {
  const RunResult g = identities("gaussian:3", 10, 1);
  CHECK(g.passed);
  const RunResult cp = identities("cpn-cylinder:n=1,j=1", 10, 1);
  CHECK(cp.passed);
  CHECK(cp.report.contains("cross"));
  CHECK(cp.report["cross"]["einstein_constant"].get<double>() == doctest::Approx(4.0).epsilon(1e-4));
  check_error(ErrorCode::kParse, [] { identities("nowhere:1", 5, 0); });
}

TEST_CASE("thread cap from the environment") {
  ::setenv("FSPECTRA_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  ::setenv("FSPECTRA_THREADS", "0", 1);
  CHECK(thread_count() >= 1);
  ::unsetenv("FSPECTRA_THREADS");
  CHECK(thread_count() >= 1);
}
