// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "semistereo/image.hpp"
#include "semistereo/placement.hpp"

namespace semistereo {

// All error metrics evaluate pred against gt over the included pixel set:
// pixels where `include` is nonzero, or every pixel when include is null.
// An empty set raises EmptyEvaluationError.

// Fraction of evaluated pixels with |pred - gt| strictly above tau.
double bad_tau(const FloatMap& pred, const FloatMap& gt, const Mask* include, double tau);
// Mean absolute disparity error.
double avg_err(const FloatMap& pred, const FloatMap& gt, const Mask* include);
// Root mean squared disparity error.
double rms_err(const FloatMap& pred, const FloatMap& gt, const Mask* include);
// Fraction of pixels whose error exceeds both 3 px and 5% of the true
// disparity (the KITTI D1 outlier rule).
double d1_all(const FloatMap& pred, const FloatMap& gt, const Mask* include);

struct MetricsReport {
  long long pixels = 0;
  double avgerr = 0.0;
  double rms = 0.0;
  std::vector<std::pair<double, double>> bad;  // (tau, fraction), ascending tau
  double d1 = 0.0;
};

// One pass over the pixel set for the whole report. Checks the internal
// consistency every report must satisfy (rms >= avgerr, bad fractions
// non-increasing in tau).
MetricsReport compute_metrics(const FloatMap& pred, const FloatMap& gt, const Mask* include,
                              const std::vector<double>& taus = {1.0, 2.0, 4.0});

struct DisparityHistogram {
  std::vector<double> edges;
  std::vector<double> mass;      // normalized over in-range pixels
  double out_of_range = 0.0;     // fraction of evaluated pixels outside the edges
  long long in_range = 0;        // pixel counts, for exact aggregation
  long long evaluated = 0;
};

// Bin disparities of the included pixels: [e_i, e_i+1), top edge into the
// last bin.
DisparityHistogram disparity_histogram(const FloatMap& disp, const Mask* include,
                                       const std::vector<double>& edges);

// L1 distance between a measured histogram and a target distribution.
// The edges must match exactly, else BinMismatchError.
double histogram_l1(const DisparityHistogram& hist, const DisparityTarget& target);

// Aligned plain-text table, one row per named report. Columns in order:
// avgerr, rms, bad-1.0, bad-2.0, bad-4.0, d1-all (as fractions).
std::string format_report_table(
    const std::vector<std::pair<std::string, MetricsReport>>& rows);

// The same report as a JSON object string.
std::string report_json(const std::string& name, const MetricsReport& report);

}  // namespace semistereo
