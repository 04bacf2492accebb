// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front-end: generate datasets, preview single frames, report
// disparity statistics, and score predictions against ground truth.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "semistereo/config.hpp"
#include "semistereo/dataset.hpp"
#include "semistereo/errors.hpp"
#include "semistereo/generate.hpp"

namespace {

using namespace semistereo;

// Exit codes: 0 success, 2 bad configuration or usage, 3 violated generation
// or evaluation invariant, 4 IO failure.
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;

std::filesystem::path config_path(const std::string& config, const std::string& preset) {
  if (!config.empty()) return config;
  const auto path = asset_root() / "presets" / (preset + ".json");
  if (!std::filesystem::exists(path))
    throw ConfigError("unknown preset '" + preset + "' (no file at " + path.string() + ")");
  return path;
}

SceneConfig load_with_overrides(const std::string& config, const std::string& preset,
                                int frames, long long seed) {
  const auto path = config_path(config, preset);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  // Overrides are applied to the raw tree so the manifest hash reflects the
  // dataset actually produced, not the file on disk.
  if (frames >= 0) j["frames"] = frames;
  if (seed >= 0) j["seed"] = seed;
  auto dir = path.parent_path();
  if (dir.empty()) dir = ".";
  return parse_config(j, dir);
}

int worker_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SEMISTEREO_WORKERS")) {
    const int n = std::atoi(env);
    if (n < 1) throw ConfigError("SEMISTEREO_WORKERS must be a positive integer, got '" +
                                 std::string(env) + "'");
    return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

int run(int argc, char** argv) {
  CLI::App app{"semistereo: semi-synthetic stereo dataset generator"};
  app.require_subcommand(1);

  std::string config, preset, out, regime = "all";
  int frames = -1, workers = 0, frame = 0;
  long long seed = -1;
  std::string pred_root, gt_root, stats_root;

  const auto add_config_flags = [&](CLI::App* cmd) {
    auto* c = cmd->add_option("--config", config, "scene config file");
    auto* p = cmd->add_option("--preset", preset, "bundled preset name");
    c->excludes(p);
  };

  auto* gen = app.add_subcommand("generate", "render a dataset");
  add_config_flags(gen);
  gen->add_option("--out", out, "output root directory")->required();
  gen->add_option("--frames", frames, "override frame count");
  gen->add_option("--seed", seed, "override master seed");
  gen->add_option("--workers", workers, "worker threads (default: all cores)");

  auto* pre = app.add_subcommand("preview", "render one frame to bitmaps");
  add_config_flags(pre);
  pre->add_option("--out", out, "output directory")->required();
  pre->add_option("frame", frame, "frame index (default 0)");
  pre->add_option("--seed", seed, "override master seed");

  auto* stats = app.add_subcommand("stats", "summarize a generated dataset");
  stats->add_option("root", stats_root, "dataset root")->required();

  auto* eval = app.add_subcommand("eval", "score predictions against ground truth");
  eval->add_option("pred", pred_root, "directory of predicted .pfm disparities")->required();
  eval->add_option("gt", gt_root, "ground-truth dataset root")->required();
  eval->add_option("--regime", regime, "all|noc (default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if ((gen->parsed() || pre->parsed()) && config.empty() && preset.empty())
    throw ConfigError("one of --config or --preset is required");

  if (gen->parsed()) {
    const SceneConfig cfg = load_with_overrides(config, preset, frames, seed);
    const BuiltScene built = build_scene(cfg);
    DatasetLayout layout;
    layout.root = out;
    const GenerateStats gs = generate_dataset(built, layout, worker_count(workers));
    std::printf("generated %d frames in %.2fs (%.2f frames/sec)\n", gs.frames, gs.seconds,
                gs.frames_per_sec);
  } else if (pre->parsed()) {
    SceneConfig cfg = load_with_overrides(config, preset, -1, seed);
    if (frame < 0 || frame >= cfg.frames)
      throw ConfigError("frame " + std::to_string(frame) + " out of range [0, " +
                        std::to_string(cfg.frames) + ")");
    write_preview(build_scene(cfg), frame, out);
    std::printf("wrote left.png, disparity.png, anaglyph.png to %s\n", out.c_str());
  } else if (stats->parsed()) {
    const DatasetStats ds = compute_dataset_stats(stats_root);
    std::fputs(ds.table.c_str(), stdout);
  } else if (eval->parsed()) {
    const EvalResult r = evaluate_datasets(pred_root, gt_root, regime);
    std::fputs(r.table.c_str(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const NoTexturesError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const NoMeshesError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const Error& e) {
    // Remaining domain errors are invariant violations: MaxDisparityExceeded,
    // Validation, DisparityOverflow, MissingOutput, EmptyEvaluation, ...
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
}
