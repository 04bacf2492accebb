// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

namespace semistereo {
namespace {

using nlohmann::json;

// Typed getters that name the full key path in error messages.

const json* find(const json& j, const std::string& key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void check_keys(const json& j, const std::string& prefix,
                const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError("config: " + prefix + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError("config: unknown key '" + (prefix.empty() ? key : prefix + "." + key) +
                        "'");
  }
}

double get_num(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError("config: " + path + " must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError("config: " + path + " must be an integer");
  return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError("config: " + path + " must be a boolean");
  return j.get<bool>();
}

std::string get_str(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError("config: " + path + " must be a string");
  return j.get<std::string>();
}

std::vector<double> get_num_array(const json& j, const std::string& path, int want = -1) {
  if (!j.is_array()) throw ConfigError("config: " + path + " must be an array");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw ConfigError("config: " + path + " must hold numbers");
    out.push_back(e.get<double>());
  }
  if (want >= 0 && static_cast<int>(out.size()) != want)
    throw ConfigError("config: " + path + " must have " + std::to_string(want) + " entries");
  return out;
}

Eigen::Vector3d get_vec3(const json& j, const std::string& path) {
  const auto v = get_num_array(j, path, 3);
  return {v[0], v[1], v[2]};
}

}  // namespace

std::filesystem::path SceneConfig::resolve_path(const std::filesystem::path& p) const {
  if (p.is_absolute() || std::filesystem::exists(p)) return p;
  return base_dir / p;
}

SceneConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j, "", {"rig", "background", "emitter", "target", "textures", "objects", "frames",
                     "fps", "seed"});
  SceneConfig cfg;
  cfg.base_dir = base_dir;

  // rig
  const json* rig = find(j, "rig");
  if (!rig) throw ConfigError("config: missing 'rig'");
  check_keys(*rig, "rig",
             {"width", "height", "focal_mm", "sensor_width_mm", "z_near", "ndisp", "z_min",
              "baseline_m"});
  cfg.rig.width_px = get_int(rig->at("width"), "rig.width");
  cfg.rig.height_px = get_int(rig->at("height"), "rig.height");
  cfg.rig.focal_mm = find(*rig, "focal_mm") ? get_num(*find(*rig, "focal_mm"), "rig.focal_mm") : 35.0;
  cfg.rig.sensor_width_mm =
      find(*rig, "sensor_width_mm") ? get_num(*find(*rig, "sensor_width_mm"), "rig.sensor_width_mm")
                                    : 35.0;
  cfg.rig.z_near_m = find(*rig, "z_near") ? get_num(*find(*rig, "z_near"), "rig.z_near") : 0.5;
  if (!find(*rig, "ndisp")) throw ConfigError("config: missing 'rig.ndisp'");
  cfg.rig.ndisp = get_num(*find(*rig, "ndisp"), "rig.ndisp");
  const json* z_min = find(*rig, "z_min");
  const json* baseline = find(*rig, "baseline_m");
  if ((z_min == nullptr) == (baseline == nullptr))
    throw ConfigError("config: rig needs exactly one of 'z_min' or 'baseline_m'");
  if (baseline) {
    cfg.rig.baseline_m = get_num(*baseline, "rig.baseline_m");
  } else {
    // Baseline chosen so a point at z_min projects with disparity ndisp.
    cfg.rig.baseline_m =
        solve_baseline(cfg.rig.ndisp, get_num(*z_min, "rig.z_min"), cfg.rig.f_px());
  }
  cfg.rig.validate();

  // background
  if (const json* bg = find(j, "background")) {
    check_keys(*bg, "background", {"type", "size", "depth"});
    const std::string type = get_str(bg->at("type"), "background.type");
    if (type == "room") {
      cfg.bg_kind = SceneConfig::BackgroundKind::Room;
      if (find(*bg, "size")) cfg.room_size = get_vec3(*find(*bg, "size"), "background.size");
      if (!(cfg.room_size.minCoeff() > 0.0))
        throw ConfigError("config: background.size must be positive");
      if (find(*bg, "depth")) throw ConfigError("config: background.depth is for far_plane only");
    } else if (type == "far_plane") {
      cfg.bg_kind = SceneConfig::BackgroundKind::FarPlane;
      if (find(*bg, "depth")) {
        cfg.far_plane_depth_m = get_num(*find(*bg, "depth"), "background.depth");
        if (!(cfg.far_plane_depth_m > 0.0))
          throw ConfigError("config: background.depth must be positive");
      }
      if (find(*bg, "size")) throw ConfigError("config: background.size is for room only");
    } else {
      throw ConfigError("config: background.type must be 'room' or 'far_plane'");
    }
  }
  if (cfg.far_plane_depth_m == 0.0)
    cfg.far_plane_depth_m = cfg.rig.f_px() * cfg.rig.baseline_m / 0.01;

  // emitter
  if (const json* em = find(j, "emitter")) {
    check_keys(*em, "emitter", {"v_min", "v_max", "omega_min", "omega_max", "gravity"});
    if (find(*em, "v_min")) cfg.emitter.v0_min = get_vec3(*find(*em, "v_min"), "emitter.v_min");
    if (find(*em, "v_max")) cfg.emitter.v0_max = get_vec3(*find(*em, "v_max"), "emitter.v_max");
    if (find(*em, "omega_min"))
      cfg.emitter.omega_min = get_num(*find(*em, "omega_min"), "emitter.omega_min");
    if (find(*em, "omega_max"))
      cfg.emitter.omega_max = get_num(*find(*em, "omega_max"), "emitter.omega_max");
    if (find(*em, "gravity")) cfg.emitter.gravity = get_vec3(*find(*em, "gravity"), "emitter.gravity");
  }
  cfg.emitter.validate();

  // target
  const json* target = find(j, "target");
  if (!target) throw ConfigError("config: missing 'target'");
  check_keys(*target, "target", {"edges", "mass", "samples_file"});
  cfg.target.edges = get_num_array(target->at("edges"), "target.edges");
  const json* mass = find(*target, "mass");
  const json* samples = find(*target, "samples_file");
  if (mass && samples)
    throw ConfigError("config: target takes 'mass' or 'samples_file', not both");
  if (mass) {
    cfg.target.mass = get_num_array(*mass, "target.mass");
  } else if (samples) {
    const auto file = std::filesystem::path(get_str(*samples, "target.samples_file"));
    std::filesystem::path resolved = file;
    if (!file.is_absolute() && !std::filesystem::exists(file)) resolved = base_dir / file;
    cfg.target = target_from_file(resolved, cfg.target.edges);
  } else {
    cfg.target.mass.assign(cfg.target.edges.size() - 1,
                           1.0 / static_cast<double>(cfg.target.edges.size() - 1));
  }
  cfg.target.validate(cfg.rig);

  // textures
  const json* tex = find(j, "textures");
  if (!tex) throw ConfigError("config: missing 'textures'");
  check_keys(*tex, "textures", {"dir", "count", "side_frac", "patch_px"});
  cfg.textures_dir = get_str(tex->at("dir"), "textures.dir");
  cfg.patch_spec.count = find(*tex, "count") ? get_int(*find(*tex, "count"), "textures.count") : 2048;
  if (find(*tex, "side_frac")) {
    const auto sf = get_num_array(*find(*tex, "side_frac"), "textures.side_frac", 2);
    cfg.patch_spec.side_frac_min = sf[0];
    cfg.patch_spec.side_frac_max = sf[1];
  }
  if (find(*tex, "patch_px"))
    cfg.patch_spec.out_side_px = get_int(*find(*tex, "patch_px"), "textures.patch_px");
  cfg.patch_spec.validate();

  // objects
  const json* obj = find(j, "objects");
  if (!obj) throw ConfigError("config: missing 'objects'");
  check_keys(*obj, "objects",
             {"pool", "total", "size_mode", "size", "anisotropic", "aniso", "preroll_frames"});
  if (find(*obj, "pool")) cfg.objects_pool = get_str(*find(*obj, "pool"), "objects.pool");
  if (!find(*obj, "total")) throw ConfigError("config: missing 'objects.total'");
  cfg.objects_total = get_int(obj->at("total"), "objects.total");
  if (cfg.objects_total < 0) throw ConfigError("config: objects.total must be non-negative");
  if (find(*obj, "size_mode")) {
    const std::string m = get_str(*find(*obj, "size_mode"), "objects.size_mode");
    if (m == "angular")
      cfg.size_mode = SizeMode::Angular;
    else if (m == "world")
      cfg.size_mode = SizeMode::World;
    else
      throw ConfigError("config: objects.size_mode must be 'angular' or 'world'");
  }
  if (find(*obj, "size")) {
    const auto s = get_num_array(*find(*obj, "size"), "objects.size", 2);
    cfg.size_min = s[0];
    cfg.size_max = s[1];
  } else {
    cfg.size_min = cfg.size_mode == SizeMode::Angular ? 64.0 : 0.5;
    cfg.size_max = cfg.size_mode == SizeMode::Angular ? 256.0 : 1.5;
  }
  if (find(*obj, "anisotropic"))
    cfg.anisotropic = get_bool(*find(*obj, "anisotropic"), "objects.anisotropic");
  if (find(*obj, "aniso")) {
    const auto a = get_num_array(*find(*obj, "aniso"), "objects.aniso", 2);
    cfg.aniso_range = {a[0], a[1]};
  }
  if (find(*obj, "preroll_frames"))
    cfg.preroll_frames = get_int(*find(*obj, "preroll_frames"), "objects.preroll_frames");
  if (cfg.preroll_frames < 0) throw ConfigError("config: objects.preroll_frames must be >= 0");

  // top-level scalars
  if (find(j, "frames")) cfg.frames = get_int(*find(j, "frames"), "frames");
  if (cfg.frames < 1) throw ConfigError("config: frames must be at least 1");
  if (find(j, "fps")) cfg.fps = get_num(*find(j, "fps"), "fps");
  if (!(cfg.fps > 0.0)) throw ConfigError("config: fps must be positive");
  if (find(j, "seed")) {
    const json& s = *find(j, "seed");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      throw ConfigError("config: seed must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  // Canonical resolved form: every effective value, keys in sorted order
  // (nlohmann objects are sorted), independent of the input's formatting.
  json r;
  r["rig"] = {{"width", cfg.rig.width_px},
              {"height", cfg.rig.height_px},
              {"focal_mm", cfg.rig.focal_mm},
              {"sensor_width_mm", cfg.rig.sensor_width_mm},
              {"z_near", cfg.rig.z_near_m},
              {"ndisp", cfg.rig.ndisp},
              {"baseline_m", cfg.rig.baseline_m}};
  if (cfg.bg_kind == SceneConfig::BackgroundKind::Room)
    r["background"] = {{"type", "room"},
                       {"size", {cfg.room_size.x(), cfg.room_size.y(), cfg.room_size.z()}}};
  else
    r["background"] = {{"type", "far_plane"}, {"depth", cfg.far_plane_depth_m}};
  r["emitter"] = {{"v_min", {cfg.emitter.v0_min.x(), cfg.emitter.v0_min.y(), cfg.emitter.v0_min.z()}},
                  {"v_max", {cfg.emitter.v0_max.x(), cfg.emitter.v0_max.y(), cfg.emitter.v0_max.z()}},
                  {"omega_min", cfg.emitter.omega_min},
                  {"omega_max", cfg.emitter.omega_max},
                  {"gravity",
                   {cfg.emitter.gravity.x(), cfg.emitter.gravity.y(), cfg.emitter.gravity.z()}}};
  r["target"] = {{"edges", cfg.target.edges}, {"mass", cfg.target.mass}};
  r["textures"] = {{"dir", cfg.textures_dir.generic_string()},
                   {"count", cfg.patch_spec.count},
                   {"side_frac", {cfg.patch_spec.side_frac_min, cfg.patch_spec.side_frac_max}},
                   {"patch_px", cfg.patch_spec.out_side_px}};
  r["objects"] = {{"pool", cfg.objects_pool},
                  {"total", cfg.objects_total},
                  {"size_mode", cfg.size_mode == SizeMode::Angular ? "angular" : "world"},
                  {"size", {cfg.size_min, cfg.size_max}},
                  {"anisotropic", cfg.anisotropic},
                  {"aniso", {cfg.aniso_range.first, cfg.aniso_range.second}},
                  {"preroll_frames", cfg.preroll_frames}};
  r["frames"] = cfg.frames;
  r["fps"] = cfg.fps;
  r["seed"] = cfg.seed;
  cfg.resolved = std::move(r);
  cfg.config_hash = fnv1a64(cfg.resolved.dump());
  return cfg;
}

SceneConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  auto dir = path.parent_path();
  if (dir.empty()) dir = ".";
  return parse_config(j, dir);
}

std::filesystem::path asset_root() {
  if (const char* env = std::getenv("SEMISTEREO_ASSETS")) return env;
#ifdef SEMISTEREO_ASSET_DIR
  return SEMISTEREO_ASSET_DIR;
#else
  return "assets";
#endif
}

SceneConfig load_preset(const std::string& name) {
  const auto path = asset_root() / "presets" / (name + ".json");
  if (!std::filesystem::exists(path))
    throw ConfigError("unknown preset '" + name + "' (no file at " + path.string() + ")");
  return load_config_file(path);
}

}  // namespace semistereo
