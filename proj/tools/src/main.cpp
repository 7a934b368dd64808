#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "fspectra/cli/run.hpp"
#include "fspectra/error.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

void emit(const fspectra::cli::json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) throw fspectra::Error(fspectra::ErrorCode::kInvalidArgument, "cannot write " + out);
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = fspectra::cli;
  CLI::App app{"Weighted Jacobi spectra and index bounds for hypersurfaces in shrinking solitons"};
  app.set_version_flag("--version", cli::version());
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Run a scene config (or a built-in scene name)");
  run->add_option("config", config, "scene JSON file")->required();
  run->add_option("--out", out, "report path; CSV tables are written next to it");
  auto* seed_opt = run->add_option("--seed", seed, "override the solver seed");

  auto* list = app.add_subcommand("list-scenes", "List built-in scenes");

  std::string ambient;
  int samples = 20;
  std::uint64_t id_seed = 0;
  auto* ids = app.add_subcommand("identities", "Check the soliton and curvature identities of an ambient");
  ids->add_option("ambient", ambient, "e.g. gaussian:3, sphere-cylinder:k=2,j=1, cpn-cylinder:n=1")->required();
  ids->add_option("--samples", samples, "random points")->check(CLI::PositiveNumber);
  ids->add_option("--seed", id_seed, "sample seed");
  ids->add_option("--out", out, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*list) {
      for (const auto& s : cli::builtin_scenes()) std::cout << s.name << "\t" << s.description << "\n";
      return kExitPass;
    }
    if (*ids) {
      const auto result = cli::identities(ambient, samples, id_seed);
      emit(result.report, out);
      return result.passed ? kExitPass : kExitCheckFailed;
    }
    cli::SceneConfig scene;
    if (!std::filesystem::exists(config)) {
      auto builtin = cli::builtin_scene(config);
      if (!builtin) throw fspectra::Error(fspectra::ErrorCode::kParse, "no such config or built-in scene: " + config);
      scene = *builtin;
    } else {
      scene = cli::load_scene(config);
    }
    cli::RunOptions options;
    if (*seed_opt) options.seed = seed;
    if (!out.empty()) options.out = out;
    const auto result = cli::run_scene(scene, options);
    emit(result.report, out);
    return result.passed ? kExitPass : kExitCheckFailed;
  } catch (const fspectra::Error& e) {
    std::cerr << "fspectra: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "fspectra: internal: " << e.what() << "\n";
  }
  return kExitError;
}
