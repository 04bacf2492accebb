// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "semistereo/errors.hpp"

namespace semistereo {
namespace {

void check_shapes(const FloatMap& pred, const FloatMap& gt, const Mask* include) {
  if (pred.width != gt.width || pred.height != gt.height)
    throw ValidationError("metrics: pred and gt disagree in size");
  if (include && (include->width != pred.width || include->height != pred.height))
    throw ValidationError("metrics: mask size does not match the maps");
  if (pred.empty()) throw EmptyEvaluationError("metrics: empty maps");
}

// Applies fn(pred, gt) to every included pixel, returns the count.
template <typename Fn>
long long for_each_included(const FloatMap& pred, const FloatMap& gt, const Mask* include,
                            Fn&& fn) {
  check_shapes(pred, gt, include);
  long long n = 0;
  for (std::size_t i = 0; i < pred.data.size(); ++i) {
    if (include && include->data[i] == 0) continue;
    fn(static_cast<double>(pred.data[i]), static_cast<double>(gt.data[i]));
    ++n;
  }
  if (n == 0) throw EmptyEvaluationError("metrics: no pixels selected");
  return n;
}

}  // namespace

double bad_tau(const FloatMap& pred, const FloatMap& gt, const Mask* include, double tau) {
  long long bad = 0;
  const long long n = for_each_included(pred, gt, include, [&](double p, double g) {
    if (std::abs(p - g) > tau) ++bad;
  });
  return static_cast<double>(bad) / static_cast<double>(n);
}

double avg_err(const FloatMap& pred, const FloatMap& gt, const Mask* include) {
  double sum = 0.0;
  const long long n = for_each_included(pred, gt, include,
                                        [&](double p, double g) { sum += std::abs(p - g); });
  return sum / static_cast<double>(n);
}

double rms_err(const FloatMap& pred, const FloatMap& gt, const Mask* include) {
  double sum = 0.0;
  const long long n = for_each_included(
      pred, gt, include, [&](double p, double g) { sum += (p - g) * (p - g); });
  return std::sqrt(sum / static_cast<double>(n));
}

double d1_all(const FloatMap& pred, const FloatMap& gt, const Mask* include) {
  long long bad = 0;
  const long long n = for_each_included(pred, gt, include, [&](double p, double g) {
    const double e = std::abs(p - g);
    if (e > 3.0 && e > 0.05 * std::abs(g)) ++bad;
  });
  return static_cast<double>(bad) / static_cast<double>(n);
}

MetricsReport compute_metrics(const FloatMap& pred, const FloatMap& gt, const Mask* include,
                              const std::vector<double>& taus) {
  MetricsReport r;
  double abs_sum = 0.0, sq_sum = 0.0;
  std::vector<long long> bad_counts(taus.size(), 0);
  long long d1_count = 0;
  r.pixels = for_each_included(pred, gt, include, [&](double p, double g) {
    const double e = std::abs(p - g);
    abs_sum += e;
    sq_sum += e * e;
    for (std::size_t k = 0; k < taus.size(); ++k)
      if (e > taus[k]) ++bad_counts[k];
    if (e > 3.0 && e > 0.05 * std::abs(g)) ++d1_count;
  });
  const double n = static_cast<double>(r.pixels);
  r.avgerr = abs_sum / n;
  r.rms = std::sqrt(sq_sum / n);
  r.d1 = static_cast<double>(d1_count) / n;
  for (std::size_t k = 0; k < taus.size(); ++k)
    r.bad.emplace_back(taus[k], static_cast<double>(bad_counts[k]) / n);

  // Internal consistency; violations would mean a broken accumulator.
  if (r.rms + 1e-12 < r.avgerr)
    throw std::logic_error("metrics: rms fell below avgerr");
  for (std::size_t k = 1; k < r.bad.size(); ++k)
    if (r.bad[k].first > r.bad[k - 1].first && r.bad[k].second > r.bad[k - 1].second + 1e-12)
      throw std::logic_error("metrics: bad-tau increased with tau");
  return r;
}

DisparityHistogram disparity_histogram(const FloatMap& disp, const Mask* include,
                                       const std::vector<double>& edges) {
  if (edges.size() < 2) throw ValidationError("histogram: need at least one bin");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw ValidationError("histogram: edges must be strictly increasing");
  if (include && (include->width != disp.width || include->height != disp.height))
    throw ValidationError("histogram: mask size does not match the map");

  DisparityHistogram h;
  h.edges = edges;
  h.mass.assign(edges.size() - 1, 0.0);
  long long in_range = 0, total = 0;
  for (std::size_t i = 0; i < disp.data.size(); ++i) {
    if (include && include->data[i] == 0) continue;
    ++total;
    const double d = disp.data[i];
    if (d < edges.front() || d > edges.back()) continue;
    auto it = std::upper_bound(edges.begin(), edges.end(), d);
    int bin = static_cast<int>(it - edges.begin()) - 1;
    if (bin == static_cast<int>(h.mass.size())) --bin;  // top edge
    h.mass[bin] += 1.0;
    ++in_range;
  }
  if (total == 0) throw EmptyEvaluationError("histogram: no pixels selected");
  if (in_range > 0)
    for (double& m : h.mass) m /= static_cast<double>(in_range);
  h.out_of_range = static_cast<double>(total - in_range) / static_cast<double>(total);
  h.in_range = in_range;
  h.evaluated = total;
  return h;
}

double histogram_l1(const DisparityHistogram& hist, const DisparityTarget& target) {
  if (hist.edges.size() != target.edges.size())
    throw BinMismatchError("histogram_l1: different bin counts");
  for (std::size_t i = 0; i < hist.edges.size(); ++i)
    if (std::abs(hist.edges[i] - target.edges[i]) > 1e-9)
      throw BinMismatchError("histogram_l1: bin edges differ");
  double l1 = 0.0;
  for (std::size_t i = 0; i < hist.mass.size(); ++i)
    l1 += std::abs(hist.mass[i] - target.mass[i]);
  return l1;
}

std::string format_report_table(
    const std::vector<std::pair<std::string, MetricsReport>>& rows) {
  std::size_t name_w = 4;
  for (const auto& [name, rep] : rows) name_w = std::max(name_w, name.size());

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s %9s %9s %9s %9s %9s %9s %10s\n",
                static_cast<int>(name_w), "name", "avgerr", "rms", "bad-1.0", "bad-2.0",
                "bad-4.0", "d1-all", "pixels");
  out += buf;
  for (const auto& [name, r] : rows) {
    const auto bad_at = [&](double tau) {
      for (const auto& [t, v] : r.bad)
        if (std::abs(t - tau) < 1e-9) return v;
      return std::nan("");
    };
    std::snprintf(buf, sizeof(buf), "%-*s %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %10lld\n",
                  static_cast<int>(name_w), name.c_str(), r.avgerr, r.rms, bad_at(1.0),
                  bad_at(2.0), bad_at(4.0), r.d1, r.pixels);
    out += buf;
  }
  return out;
}

std::string report_json(const std::string& name, const MetricsReport& r) {
  nlohmann::json j;
  j["name"] = name;
  j["pixels"] = r.pixels;
  j["avgerr"] = r.avgerr;
  j["rms"] = r.rms;
  for (const auto& [tau, v] : r.bad) {
    char key[32];
    std::snprintf(key, sizeof(key), "bad-%.1f", tau);
    j[key] = v;
  }
  j["d1-all"] = r.d1;
  return j.dump(2);
}

}  // namespace semistereo
