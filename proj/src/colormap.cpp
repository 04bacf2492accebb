// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/colormap.hpp"

#include <algorithm>
#include <cmath>

#include "semistereo/errors.hpp"

namespace semistereo {
namespace {

std::uint8_t to_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v * 255.0), 0l, 255l));
}

double poly5(double t, const double (&c)[6]) {
  return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
}

}  // namespace

std::array<std::uint8_t, 3> turbo(double t) {
  t = std::clamp(t, 0.0, 1.0);
  static constexpr double kR[6] = {0.13572138, 4.61539260, -42.66032258,
                                   132.13108234, -152.94239396, 59.28637943};
  static constexpr double kG[6] = {0.09140261, 2.19418839, 4.84296658,
                                   -14.18503333, 4.27729857, 2.82956604};
  static constexpr double kB[6] = {0.10667330, 12.64194608, -60.58204836,
                                   110.36276771, -89.90310912, 27.34824973};
  return {to_u8(std::clamp(poly5(t, kR), 0.0, 1.0)),
          to_u8(std::clamp(poly5(t, kG), 0.0, 1.0)),
          to_u8(std::clamp(poly5(t, kB), 0.0, 1.0))};
}

Image8 colorize_disparity(const FloatMap& disp, double ndisp) {
  if (!(ndisp > 0.0)) throw ValidationError("colorize_disparity: ndisp must be positive");
  Image8 out(disp.width, disp.height, 3);
  for (int y = 0; y < disp.height; ++y) {
    for (int x = 0; x < disp.width; ++x) {
      const auto rgb = turbo(disp.at(x, y) / ndisp);
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = rgb[c];
    }
  }
  return out;
}

Image8 anaglyph(const Image8& left, const Image8& right) {
  if (left.width != right.width || left.height != right.height || left.channels != 3 ||
      right.channels != 3)
    throw ValidationError("anaglyph: need two RGB images of the same size");
  const auto lum = [](const Image8& img, int x, int y) {
    return static_cast<std::uint8_t>(std::lround(
        0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2)));
  };
  Image8 out(left.width, left.height, 3);
  for (int y = 0; y < left.height; ++y) {
    for (int x = 0; x < left.width; ++x) {
      out.at(x, y, 0) = lum(left, x, y);
      const std::uint8_t r = lum(right, x, y);
      out.at(x, y, 1) = r;
      out.at(x, y, 2) = r;
    }
  }
  return out;
}

}  // namespace semistereo
