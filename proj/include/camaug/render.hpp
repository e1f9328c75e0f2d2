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
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "camaug/image.hpp"
#include "camaug/labels.hpp"

namespace camaug {

using Rgb = std::array<std::uint8_t, 3>;

struct RenderStyle {
  Rgb kept = {255, 255, 0};      // yellow
  Rgb filtered = {255, 0, 255};  // magenta
  /// Segments are clipped against this depth before projection.
  double near_plane = 0.01;
};

enum class RenderStatus { kept, filtered, behind_camera };

inline std::string_view to_string(RenderStatus s) {
  switch (s) {
    case RenderStatus::kept: return "kept";
    case RenderStatus::filtered: return "filtered";
    case RenderStatus::behind_camera: return "behind_camera";
  }
  return "?";
}

struct RenderedObject {
  std::string id;
  std::string category;
  RenderStatus status = RenderStatus::kept;
  std::optional<FilterReason> reason;
  int edges_drawn = 0;
};

/// The 12 cuboid edges as corner index pairs; corners differ in exactly one sign bit.
inline constexpr std::array<std::pair<int, int>, 12> kCuboidEdges = {{
    {0, 1}, {2, 3}, {4, 5}, {6, 7},  // along L
    {0, 2}, {1, 3}, {4, 6}, {5, 7},  // along H
    {0, 4}, {1, 5}, {2, 6}, {3, 7},  // along W
}};

namespace detail {

// Liang-Barsky clip of a 2D segment to [0,w] x [0,h].
inline bool clip_segment(Vec2& a, Vec2& b, double w, double h) {
  double t0 = 0.0, t1 = 1.0;
  const Vec2 d = b - a;
  const std::array<double, 4> p = {-d.x(), d.x(), -d.y(), d.y()};
  const std::array<double, 4> q = {a.x(), w - a.x(), a.y(), h - a.y()};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      if (r > t1) return false;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return false;
      t1 = std::min(t1, r);
    }
  }
  const Vec2 start = a + t0 * d;
  b = a + t1 * d;
  a = start;
  return true;
}

inline void plot(ImageBuffer& img, int x, int y, const Rgb& color) {
  if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) return;
  std::uint8_t* px = img.pixel(x, y);
  if (img.channels() >= 3) {
    px[0] = color[0], px[1] = color[1], px[2] = color[2];
  } else {
    px[0] = static_cast<std::uint8_t>((color[0] + color[1] + color[2]) / 3);
  }
}

// Samples the segment at unit spacing and lights the containing pixels.
inline void draw_line(ImageBuffer& img, const Vec2& a, const Vec2& b, const Rgb& color) {
  const double len = (b - a).cwiseAbs().maxCoeff();
  const int steps = std::max(1, static_cast<int>(std::ceil(len)));
  for (int i = 0; i <= steps; ++i) {
    const Vec2 p = a + (b - a) * (static_cast<double>(i) / steps);
    plot(img, static_cast<int>(std::floor(p.x())), static_cast<int>(std::floor(p.y())), color);
  }
}

}  // namespace detail

/// Draws each object's projected wireframe onto `img` (which must match the
/// sample's canvas). Edges are clipped to z >= near_plane in 3D, then to the
/// canvas in 2D. Objects the filter would remove are drawn in the filtered
/// color; objects whose center is behind the camera are only reported.
inline std::vector<RenderedObject> render_wireframes(ImageBuffer& img, const Sample& s,
                                                     const FilterConfig& filter = {}, const RenderStyle& style = {}) {
  if (img.width() != s.width || img.height() != s.height) {
    throw Error(Errc::invalid_argument, "image size does not match the sample canvas");
  }
  std::vector<RenderedObject> legend;
  for (const auto& obj : s.objects) {
    RenderedObject entry;
    entry.id = obj.id;
    entry.category = obj.category;
    if (!(obj.pose.center.z() > 0.0)) {
      entry.status = RenderStatus::behind_camera;
      entry.reason = FilterReason::invalid_depth;
      legend.push_back(entry);
      continue;
    }
    FilterConfig active = filter;
    active.enabled = true;
    if (filter.enabled) {
      entry.reason = filter_reason(obj, s.intrinsics, s.width, s.height, active);
      if (entry.reason) entry.status = RenderStatus::filtered;
    }
    const Rgb& color = entry.status == RenderStatus::kept ? style.kept : style.filtered;

    const Corners corners = cuboid_corners(obj.pose);
    for (const auto& [i, j] : kCuboidEdges) {
      Vec3 a = corners[i];
      Vec3 b = corners[j];
      if (a.z() < style.near_plane && b.z() < style.near_plane) continue;
      if (a.z() < style.near_plane) a = a + (b - a) * ((style.near_plane - a.z()) / (b.z() - a.z()));
      if (b.z() < style.near_plane) b = b + (a - b) * ((style.near_plane - b.z()) / (a.z() - b.z()));
      Vec2 pa = project(s.intrinsics, a).head<2>();
      Vec2 pb = project(s.intrinsics, b).head<2>();
      if (!detail::clip_segment(pa, pb, s.width, s.height)) continue;
      detail::draw_line(img, pa, pb, color);
      ++entry.edges_drawn;
    }
    legend.push_back(entry);
  }
  return legend;
}

}  // namespace camaug
