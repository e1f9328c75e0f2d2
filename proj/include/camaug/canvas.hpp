// Copyright 2026 The camaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>

#include "camaug/geometry.hpp"

namespace camaug {

/// Output canvas: intrinsics of the rotated view plus its pixel extent.
struct CanvasSpec {
  Intrinsics k;
  int width = 0;
  int height = 0;
};

enum class CanvasMode {
  /// Pad symmetrically about the optical axis; principal point at the canvas center.
  centered,
  /// Crop to the bounding box of the rotated footprint; principal point wherever it lands.
  bounding_box,
};

namespace detail {

// Absorbs floating noise in extents that are mathematically integral
// (e.g. 2 * 240 computed as 480.00000000000006).
inline constexpr double kCeilSlack = 1e-6;

inline int ceil_extent(double extent) {
  const double c = std::ceil(extent - kCeilSlack);
  if (!(c < static_cast<double>(INT_MAX))) {
    throw Error(Errc::canvas_too_large, "canvas extent " + fmt_double(extent) + " px does not fit an int");
  }
  return std::max(1, static_cast<int>(c));
}

}  // namespace detail

/// Maps the four source image corners (0,0), (W,0), (0,H), (W,H) through h.
/// Throws excessive_rotation if a corner ray leaves the forward hemisphere.
inline std::array<Vec2, 4> map_source_corners(const Mat3& h, int width, int height) {
  const std::array<Vec2, 4> corners = {Vec2(0, 0), Vec2(width, 0), Vec2(0, height), Vec2(width, height)};
  std::array<Vec2, 4> out;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const auto p = map_pixel(h, corners[i]);
    if (!p) {
      throw Error(Errc::excessive_rotation,
                  "image corner is rotated to 90 degrees or more off the optical axis; reduce the rotation range");
    }
    out[i] = *p;
  }
  return out;
}

/// Computes the canvas that holds every rotated source pixel.
///
/// Centered mode: corners go through K0 * op * K_src^-1 where K0 is K_src with
/// its principal point moved to the origin; x_max = max |u'|, y_max = max |v'|.
/// The canvas is ceil(2 x_max) by ceil(2 y_max) and K_C keeps the focal
/// lengths with the principal point at the exact canvas center, i.e. x_max
/// shifted by half the rounding remainder.
inline CanvasSpec realign_principal_point(const Intrinsics& k_src, int src_width, int src_height,
                                          const Orthogonal3& op, CanvasMode mode = CanvasMode::centered) {
  validate(k_src);
  if (src_width <= 0 || src_height <= 0) {
    throw Error(Errc::invalid_argument, "source dimensions must be positive");
  }

  if (mode == CanvasMode::centered) {
    const Intrinsics k0 = k_src.with_principal_point(0.0, 0.0);
    const auto mapped = map_source_corners(k0.matrix() * op.matrix() * k_src.inverse_matrix(), src_width, src_height);
    double x_max = 0.0;
    double y_max = 0.0;
    for (const auto& p : mapped) {
      x_max = std::max(x_max, std::abs(p.x()));
      y_max = std::max(y_max, std::abs(p.y()));
    }
    CanvasSpec out;
    out.width = detail::ceil_extent(2.0 * x_max);
    out.height = detail::ceil_extent(2.0 * y_max);
    out.k = k_src.with_principal_point(out.width / 2.0, out.height / 2.0);
    return out;
  }

  const auto mapped = map_source_corners(pure_rotation_homography(k_src, op, k_src), src_width, src_height);
  double u_min = mapped[0].x(), u_max = mapped[0].x();
  double v_min = mapped[0].y(), v_max = mapped[0].y();
  for (const auto& p : mapped) {
    u_min = std::min(u_min, p.x());
    u_max = std::max(u_max, p.x());
    v_min = std::min(v_min, p.y());
    v_max = std::max(v_max, p.y());
  }
  CanvasSpec out;
  out.width = detail::ceil_extent(u_max - u_min);
  out.height = detail::ceil_extent(v_max - v_min);
  out.k = k_src.with_principal_point(k_src.cx - u_min, k_src.cy - v_min);
  return out;
}

}  // namespace camaug
