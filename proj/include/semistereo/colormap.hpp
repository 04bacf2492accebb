// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "semistereo/image.hpp"

namespace semistereo {

// Turbo colormap (polynomial fit), t clamped to [0, 1].
std::array<std::uint8_t, 3> turbo(double t);

// Disparity visualization: d / ndisp through turbo, so 0 maps to turbo(0)
// and ndisp to turbo(1).
Image8 colorize_disparity(const FloatMap& disp, double ndisp);

// Red-cyan anaglyph from the pair's luminances: red = left, green and blue =
// right. Identical inputs give a neutral gray composite.
Image8 anaglyph(const Image8& left, const Image8& right);

}  // namespace semistereo
