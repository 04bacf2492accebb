// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/generate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <thread>

#include "semistereo/colormap.hpp"
#include "semistereo/obj_loader.hpp"
#include "semistereo/pfm.hpp"
#include "semistereo/png_io.hpp"
#include "semistereo/primitives.hpp"

namespace semistereo {
namespace {

namespace fs = std::filesystem;

std::vector<fs::path> list_sorted(const fs::path& dir,
                                  const std::vector<std::string>& extensions) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end())
      out.push_back(entry.path());
  }
  // Directory iteration order is filesystem-dependent; sort for determinism.
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return out;
}

MeshAsset quad_mesh(const std::string& name, const Eigen::Vector3d& a,
                    const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                    const Eigen::Vector3d& d) {
  MeshAsset m;
  m.name = name;
  m.positions = {a, b, c, d};
  m.uvs = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  m.triangles = {{{0, 1, 2}, {0, 1, 2}}, {{0, 2, 3}, {0, 2, 3}}};
  return m;
}

// Background geometry in world coordinates with identity transforms. Returns
// meshes paired with the characteristic viewing depth used for UV sizing.
std::vector<std::pair<MeshAsset, double>> background_geometry(const SceneConfig& cfg) {
  std::vector<std::pair<MeshAsset, double>> out;
  const StereoRig& rig = cfg.rig;
  if (cfg.bg_kind == SceneConfig::BackgroundKind::FarPlane) {
    const double D = cfg.far_plane_depth_m;
    // Oversize the quad so it covers both eye frustums with margin.
    const double hw = 0.55 * rig.width_px * D / rig.f_px() + rig.baseline_m;
    const double hh = 0.55 * rig.height_px * D / rig.f_px();
    const double cx = rig.baseline_m / 2.0;
    out.emplace_back(quad_mesh("backdrop", {cx - hw, -hh, D}, {cx + hw, -hh, D},
                               {cx + hw, hh, D}, {cx - hw, hh, D}),
                     D);
    return out;
  }
  // Room around the rig: the camera sits just inside the front wall, looking
  // down the long axis.
  const double w = cfg.room_size.x(), h = cfg.room_size.y(), d = cfg.room_size.z();
  const double x0 = rig.baseline_m / 2.0 - w / 2.0, x1 = rig.baseline_m / 2.0 + w / 2.0;
  const double y0 = -h / 2.0, y1 = h / 2.0;
  const double z0 = -0.1 * d, z1 = 0.9 * d;
  const double mid = 0.45 * d;
  out.emplace_back(quad_mesh("back_wall", {x0, y0, z1}, {x1, y0, z1}, {x1, y1, z1}, {x0, y1, z1}),
                   z1);
  out.emplace_back(quad_mesh("floor", {x0, y1, z0}, {x1, y1, z0}, {x1, y1, z1}, {x0, y1, z1}),
                   mid);
  out.emplace_back(
      quad_mesh("ceiling", {x0, y0, z0}, {x1, y0, z0}, {x1, y0, z1}, {x0, y0, z1}), mid);
  out.emplace_back(quad_mesh("left_wall", {x0, y0, z0}, {x0, y1, z0}, {x0, y1, z1}, {x0, y0, z1}),
                   mid);
  out.emplace_back(
      quad_mesh("right_wall", {x1, y0, z0}, {x1, y1, z0}, {x1, y1, z1}, {x1, y0, z1}), mid);
  out.emplace_back(quad_mesh("front_wall", {x0, y0, z0}, {x1, y0, z0}, {x1, y1, z0}, {x0, y1, z0}),
                   mid);
  return out;
}

}  // namespace

BuiltScene build_scene(const SceneConfig& cfg) {
  RandomStream master(cfg.seed);

  // Texture sources. A missing directory is a config error that must name
  // the path.
  const fs::path tex_dir = cfg.resolve_path(cfg.textures_dir);
  if (!fs::is_directory(tex_dir))
    throw ConfigError("texture directory not found: " + tex_dir.string());
  std::vector<SourceImage> sources;
  for (const auto& p : list_sorted(tex_dir, {".png", ".ppm"}))
    sources.push_back({read_image(p), p.filename().string()});
  if (sources.empty())
    throw NoTexturesError("no .png or .ppm images in " + tex_dir.string());
  RandomStream patch_rng = master.fork(kSeedPatches);
  PatchSequence patches = extract_patches(sources, cfg.patch_spec, patch_rng);

  // Mesh pool.
  std::vector<MeshAsset> pool;
  if (cfg.objects_pool == "primitives") {
    pool = primitive_pool();
  } else {
    const fs::path dir = cfg.resolve_path(cfg.objects_pool);
    if (!fs::is_directory(dir))
      throw ConfigError("mesh pool directory not found: " + dir.string());
    for (const auto& p : list_sorted(dir, {".obj"})) pool.push_back(load_obj(p));
    if (pool.empty()) throw NoMeshesError("no .obj meshes in " + dir.string());
  }

  BuiltScene built;
  Scene& scene = built.scene;
  scene.rig = cfg.rig;
  scene.meshes = pool;
  scene.gravity = cfg.emitter.gravity;
  scene.fps = cfg.fps;
  scene.frames = cfg.frames;
  scene.seed = cfg.seed;
  scene.config_hash = cfg.config_hash;

  // Background instances come first so depth ties resolve in their favor.
  for (auto& [mesh, char_depth] : background_geometry(cfg)) {
    ObjectInstance inst;
    inst.mesh = static_cast<int>(scene.meshes.size());
    inst.uv_scale = compute_uv_scale(mesh.bounds().sizes(), cfg.patch_spec.out_side_px,
                                     char_depth, cfg.rig);
    scene.meshes.push_back(std::move(mesh));
    scene.objects.push_back(inst);
  }
  scene.background_objects = static_cast<int>(scene.objects.size());

  // Spawned objects.
  SpawnOptions opt;
  opt.frame_begin = -cfg.preroll_frames;
  opt.frame_end = cfg.frames;
  opt.dataset_frames = cfg.frames;
  opt.fps = cfg.fps;
  opt.size_mode = cfg.size_mode;
  opt.size_min = cfg.size_min;
  opt.size_max = cfg.size_max;
  opt.anisotropic = cfg.anisotropic;
  opt.aniso_range = cfg.aniso_range;
  const auto counts = plan_counts(cfg.target, cfg.objects_total);
  RandomStream spawn_rng = master.fork(kSeedSpawn);
  SpawnResult spawned = spawn(pool, cfg.target, counts, cfg.emitter, opt, cfg.rig, spawn_rng);
  for (auto& obj : spawned.objects) {
    // Pool meshes sit at the front of scene.meshes, so indices carry over.
    scene.objects.push_back(obj);
  }
  scene.particles = std::move(spawned.particles);

  RandomStream tex_rng = master.fork(kSeedTextures);
  scene = assign_textures(std::move(scene), patches, tex_rng);

  // UV tiling so spawned objects show 1-2 px texels at spawn depth.
  for (std::size_t i = scene.background_objects; i < scene.objects.size(); ++i) {
    ObjectInstance& obj = scene.objects[i];
    const Eigen::Vector3d bbox =
        scene.meshes[obj.mesh].bounds().sizes().cwiseProduct(obj.transform.scale);
    obj.uv_scale = compute_uv_scale(bbox, cfg.patch_spec.out_side_px,
                                    scene.particles[obj.particle].p0.z(), cfg.rig);
  }

  scene.validate(patches.count());
  built.patches = std::move(patches);
  built.resolved_config = cfg.resolved;
  return built;
}

GenerateStats generate_dataset(const BuiltScene& built, const DatasetLayout& layout,
                               int workers) {
  if (workers < 1) throw ValidationError("generate: worker count must be at least 1");
  const Scene& scene = built.scene;
  prepare_output_root(layout, scene.config_hash, scene.seed);

  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mu;

  const auto worker = [&]() {
    for (;;) {
      const int frame = next.fetch_add(1);
      if (frame >= scene.frames || stop.load()) return;
      try {
        const FrameSample sample = render_pair(scene, built.patches, frame);
        write_frame(layout, sample, scene.rig);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        stop.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);

  // All frames on disk; the manifest lands last so a crashed run leaves none.
  write_manifest(layout, built.resolved_config, scene.config_hash, scene.seed, scene.frames,
                 scene.fps, scene.rig);

  GenerateStats stats;
  stats.frames = scene.frames;
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  stats.frames_per_sec = stats.seconds > 0.0 ? stats.frames / stats.seconds : 0.0;
  return stats;
}

void write_preview(const BuiltScene& built, int frame, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const FrameSample sample = render_pair(built.scene, built.patches, frame);
  write_png(out_dir / "left.png", sample.left);
  write_png(out_dir / "disparity.png",
            colorize_disparity(sample.disparity, built.scene.rig.ndisp));
  write_png(out_dir / "anaglyph.png", anaglyph(sample.left, sample.right));
}

DatasetLayout layout_from_manifest(const fs::path& root, const nlohmann::json& manifest) {
  DatasetLayout layout;
  layout.root = root;
  layout.style = manifest.value("layout", "middlebury") == "kitti" ? LayoutStyle::Kitti
                                                                   : LayoutStyle::Middlebury;
  const auto& outputs = manifest.at("outputs");
  layout.with_pfm = outputs.value("pfm", true);
  layout.with_png16 = outputs.value("png16", false);
  layout.with_occlusion = outputs.value("occlusion", true);
  layout.with_calib = outputs.value("calib", true);
  return layout;
}

DatasetStats compute_dataset_stats(const fs::path& root) {
  const nlohmann::json manifest = read_manifest(root);
  const DatasetLayout layout = layout_from_manifest(root, manifest);
  const int frames = manifest.at("frames").get<int>();
  if (frames < 1) throw ConfigError("dataset at " + root.string() + " has no frames");

  DisparityTarget target;
  target.edges = manifest.at("config").at("target").at("edges").get<std::vector<double>>();
  target.mass = manifest.at("config").at("target").at("mass").get<std::vector<double>>();

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> fg_counts(target.mass.size(), 0.0), full_counts(target.mass.size(), 0.0);
  long long fg_in = 0, fg_total = 0, full_in = 0, full_total = 0;
  long long occluded = 0, pixels = 0;
  for (int f = 0; f < frames; ++f) {
    const FrameSample s = read_pair(layout, f);
    Mask fg(s.disparity.width, s.disparity.height, 0);
    for (std::size_t i = 0; i < s.disparity.data.size(); ++i)
      fg.data[i] = s.disparity.data[i] >= target.edges.front() ? 1 : 0;

    const auto full = disparity_histogram(s.disparity, nullptr, target.edges);
    full_in += full.in_range;
    full_total += full.evaluated;
    for (std::size_t b = 0; b < full.mass.size(); ++b)
      full_counts[b] += full.mass[b] * static_cast<double>(full.in_range);
    if (std::count(fg.data.begin(), fg.data.end(), 1) > 0) {
      const auto fgh = disparity_histogram(s.disparity, &fg, target.edges);
      fg_in += fgh.in_range;
      fg_total += fgh.evaluated;
      for (std::size_t b = 0; b < fgh.mass.size(); ++b)
        fg_counts[b] += fgh.mass[b] * static_cast<double>(fgh.in_range);
    }
    if (!s.occlusion.data.empty()) {
      pixels += static_cast<long long>(s.occlusion.data.size());
      for (const auto v : s.occlusion.data) occluded += v ? 1 : 0;
    }
  }

  DatasetStats out;
  out.frames = frames;
  const auto normalize = [&](std::vector<double> counts, long long in_range, long long total) {
    DisparityHistogram h;
    h.edges = target.edges;
    h.mass = std::move(counts);
    if (in_range > 0)
      for (double& m : h.mass) m /= static_cast<double>(in_range);
    h.in_range = in_range;
    h.evaluated = total;
    h.out_of_range =
        total > 0 ? static_cast<double>(total - in_range) / static_cast<double>(total) : 0.0;
    return h;
  };
  out.foreground = normalize(std::move(fg_counts), fg_in, fg_total);
  out.full = normalize(std::move(full_counts), full_in, full_total);
  out.l1_foreground = fg_in > 0 ? histogram_l1(out.foreground, target) : 2.0;
  out.l1_full = full_in > 0 ? histogram_l1(out.full, target) : 2.0;
  out.occluded_fraction =
      pixels > 0 ? static_cast<double>(occluded) / static_cast<double>(pixels) : 0.0;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  char buf[256];
  std::string table;
  std::snprintf(buf, sizeof(buf), "%-12s %10s %10s %10s\n", "bin", "target", "foreground",
                "full");
  table += buf;
  for (std::size_t b = 0; b < target.mass.size(); ++b) {
    std::snprintf(buf, sizeof(buf), "[%5.1f,%5.1f] %10.4f %10.4f %10.4f\n", target.edges[b],
                  target.edges[b + 1], target.mass[b], out.foreground.mass[b],
                  out.full.mass[b]);
    table += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "L1(foreground)=%.4f L1(full)=%.4f occluded=%.4f frames=%d (%.2fs, %.1f ms/frame)\n",
                out.l1_foreground, out.l1_full, out.occluded_fraction, frames, out.seconds,
                1000.0 * out.seconds / frames);
  table += buf;
  out.table = table;
  return out;
}

EvalResult evaluate_datasets(const fs::path& pred_root, const fs::path& gt_root,
                             const std::string& regime) {
  if (regime != "all" && regime != "noc")
    throw ConfigError("regime must be 'all' or 'noc', got '" + regime + "'");
  const nlohmann::json manifest = read_manifest(gt_root);
  const DatasetLayout layout = layout_from_manifest(gt_root, manifest);
  const int frames = manifest.at("frames").get<int>();

  EvalResult out;
  MetricsReport total;
  char name[32];
  for (int f = 0; f < frames; ++f) {
    const FrameSample gt = read_pair(layout, f);
    if (regime == "noc" && gt.occlusion.data.empty())
      throw ConfigError("dataset at " + gt_root.string() +
                        " has no occlusion masks; cannot evaluate regime 'noc'");

    // Predictions either mirror the dataset tree or sit flat in pred_root.
    std::snprintf(name, sizeof(name), "%06d", f);
    const fs::path mirrored =
        pred_root / fs::relative(layout.paths(f).disp_pfm, layout.root);
    const std::vector<fs::path> candidates = {
        mirrored, pred_root / ("frame_" + std::string(name) + ".pfm"),
        pred_root / (std::string(name) + ".pfm")};
    fs::path pred_path;
    for (const auto& c : candidates)
      if (fs::exists(c)) {
        pred_path = c;
        break;
      }
    if (pred_path.empty()) {
      std::string tried;
      for (const auto& c : candidates) tried += "\n  " + c.string();
      throw MissingOutputError("frame " + std::string(name) + ": no prediction found; tried:" +
                               tried);
    }
    const FloatMap pred = read_pfm(pred_path);
    if (pred.width != gt.disparity.width || pred.height != gt.disparity.height)
      throw ValidationError("frame " + std::string(name) + ": prediction is " +
                            std::to_string(pred.width) + "x" + std::to_string(pred.height) +
                            ", ground truth is " + std::to_string(gt.disparity.width) + "x" +
                            std::to_string(gt.disparity.height));

    Mask include;
    const Mask* include_ptr = nullptr;
    if (regime == "noc") {
      include = Mask(gt.occlusion.width, gt.occlusion.height);
      for (std::size_t i = 0; i < include.data.size(); ++i)
        include.data[i] = gt.occlusion.data[i] ? 0 : 1;
      include_ptr = &include;
    }
    const MetricsReport r = compute_metrics(pred, gt.disparity, include_ptr);
    out.rows.emplace_back("frame_" + std::string(name), r);

    // Pixel-weighted aggregation is exact for all of these metrics.
    const double n = static_cast<double>(r.pixels);
    if (total.bad.empty())
      for (const auto& [tau, v] : r.bad) total.bad.emplace_back(tau, 0.0);
    total.avgerr += r.avgerr * n;
    total.rms += r.rms * r.rms * n;
    total.d1 += r.d1 * n;
    for (std::size_t k = 0; k < r.bad.size(); ++k) total.bad[k].second += r.bad[k].second * n;
    total.pixels += r.pixels;
  }
  const double n = static_cast<double>(total.pixels);
  total.avgerr /= n;
  total.rms = std::sqrt(total.rms / n);
  total.d1 /= n;
  for (auto& [tau, v] : total.bad) v /= n;
  out.rows.emplace_back("all", total);
  out.table = format_report_table(out.rows);
  return out;
}

}  // namespace semistereo
