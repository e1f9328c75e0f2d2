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

/**
 * @file warp.hpp
 * @brief Inverse-mapping image remap through a 3x3 homography.
 *
 * Pixel (i, j) covers [i, i+1) x [j, j+1) and is sampled at (i+0.5, j+0.5).
 * Each output pixel is pulled from normalize(H^-1 * p'), so the output is
 * hole free and every pixel depends only on its own mapping. Rows are split
 * into tiles handed to worker threads; results do not depend on the split.
 */

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "camaug/canvas.hpp"
#include "camaug/geometry.hpp"
#include "camaug/image.hpp"

namespace camaug {

enum class Interpolation { nearest, bilinear };

inline std::string_view to_string(Interpolation i) { return i == Interpolation::nearest ? "nearest" : "bilinear"; }

struct WarpOptions {
  Interpolation interpolation = Interpolation::bilinear;
  std::array<std::uint8_t, 4> fill = {0, 0, 0, 0};
  /// 0 picks std::thread::hardware_concurrency().
  int threads = 0;
  int rows_per_tile = 16;
  /// Largest accepted output width or height.
  int max_dimension = 16384;
};

struct WarpResult {
  ImageBuffer image;
  ValidityMask valid;
};

namespace detail {

inline std::uint8_t round_to_u8(double v) {
  // Half away from zero; v is non-negative here.
  const double r = std::floor(v + 0.5);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

inline void warp_rows(const ImageBuffer& src, const Mat3& inv, const WarpOptions& opt, ImageBuffer& dst,
                      ValidityMask& valid, int row_begin, int row_end) {
  const int sw = src.width();
  const int sh = src.height();
  const int ch = src.channels();
  const int ow = dst.width();

  for (int y = row_begin; y < row_end; ++y) {
    const double py = y + 0.5;
    for (int x = 0; x < ow; ++x) {
      const double px = x + 0.5;
      const double w = inv(2, 0) * px + inv(2, 1) * py + inv(2, 2);
      std::uint8_t* out = dst.pixel(x, y);
      bool inside = false;
      double sx = 0.0;
      double sy = 0.0;
      if (w > kHomogeneousEps) {
        sx = (inv(0, 0) * px + inv(0, 1) * py + inv(0, 2)) / w;
        sy = (inv(1, 0) * px + inv(1, 1) * py + inv(1, 2)) / w;
        inside = sx >= 0.0 && sx <= sw && sy >= 0.0 && sy <= sh;
      }
      valid.set(x, y, inside);
      if (!inside) {
        for (int c = 0; c < ch; ++c) out[c] = opt.fill[c];
        continue;
      }

      if (opt.interpolation == Interpolation::nearest) {
        const int ix = std::min(static_cast<int>(sx), sw - 1);
        const int iy = std::min(static_cast<int>(sy), sh - 1);
        const std::uint8_t* in = src.pixel(ix, iy);
        for (int c = 0; c < ch; ++c) out[c] = in[c];
        continue;
      }

      // Bilinear between the four nearest pixel centers, edges replicated.
      const double fx = sx - 0.5;
      const double fy = sy - 0.5;
      const double x0f = std::floor(fx);
      const double y0f = std::floor(fy);
      const double ax = fx - x0f;
      const double ay = fy - y0f;
      const int x0 = std::clamp(static_cast<int>(x0f), 0, sw - 1);
      const int x1 = std::clamp(static_cast<int>(x0f) + 1, 0, sw - 1);
      const int y0 = std::clamp(static_cast<int>(y0f), 0, sh - 1);
      const int y1 = std::clamp(static_cast<int>(y0f) + 1, 0, sh - 1);
      const std::uint8_t* p00 = src.pixel(x0, y0);
      const std::uint8_t* p10 = src.pixel(x1, y0);
      const std::uint8_t* p01 = src.pixel(x0, y1);
      const std::uint8_t* p11 = src.pixel(x1, y1);
      for (int c = 0; c < ch; ++c) {
        const double top = (1.0 - ax) * p00[c] + ax * p10[c];
        const double bottom = (1.0 - ax) * p01[c] + ax * p11[c];
        out[c] = round_to_u8((1.0 - ay) * top + ay * bottom);
      }
    }
  }
}

}  // namespace detail

/// Warps `src` onto an out_width x out_height canvas through homography `h`
/// (source pixel -> output pixel). Output pixels whose source location falls
/// outside [0, W] x [0, H] receive `fill` and a cleared validity flag.
inline WarpResult warp_image(const ImageBuffer& src, const Mat3& h, int out_width, int out_height,
                             const WarpOptions& opt = {}) {
  if (src.empty()) throw Error(Errc::invalid_argument, "source image is empty");
  if (!h.allFinite() || !(std::abs(h.determinant()) > 1e-12)) {
    throw Error(Errc::invalid_homography, "homography is singular or non-finite");
  }
  if (out_width <= 0 || out_height <= 0) throw Error(Errc::invalid_argument, "canvas dimensions must be positive");
  if (out_width > opt.max_dimension || out_height > opt.max_dimension) {
    throw Error(Errc::canvas_too_large, "canvas " + std::to_string(out_width) + "x" + std::to_string(out_height) +
                                            " exceeds the " + std::to_string(opt.max_dimension) + " px limit");
  }

  const Mat3 inv = h.inverse();
  WarpResult result{ImageBuffer(out_width, out_height, src.channels()), ValidityMask(out_width, out_height)};

  const int tile = std::max(1, opt.rows_per_tile);
  const int tiles = (out_height + tile - 1) / tile;
  int workers = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, tiles);

  if (workers == 1) {
    detail::warp_rows(src, inv, opt, result.image, result.valid, 0, out_height);
    return result;
  }

  std::atomic<int> next{0};
  auto work = [&] {
    for (int t = next.fetch_add(1); t < tiles; t = next.fetch_add(1)) {
      detail::warp_rows(src, inv, opt, result.image, result.valid, t * tile, std::min(out_height, (t + 1) * tile));
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (int i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
  }
  return result;
}

inline WarpResult warp_image(const ImageBuffer& src, const Mat3& h, const CanvasSpec& canvas,
                             const WarpOptions& opt = {}) {
  return warp_image(src, h, canvas.width, canvas.height, opt);
}

/// Label rasters: nearest sampling only, so output values are a subset of input values.
inline WarpResult warp_mask(const ImageBuffer& src, const Mat3& h, const CanvasSpec& canvas, WarpOptions opt = {}) {
  if (src.channels() != 1) throw Error(Errc::invalid_argument, "masks must be single-channel");
  opt.interpolation = Interpolation::nearest;
  return warp_image(src, h, canvas.width, canvas.height, opt);
}

}  // namespace camaug
