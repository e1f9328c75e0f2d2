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


#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "fixtures.hpp"

namespace camaug {
namespace {

using testing::kH;
using testing::kK;
using testing::kW;
using testing::sinusoid_image;

struct Warped {
  CanvasSpec canvas;
  Mat3 h;
};

Warped setup(const Orthogonal3& op, const Intrinsics& k = kK, int w = kW, int h = kH) {
  const CanvasSpec canvas = realign_principal_point(k, w, h, op);
  return {canvas, pure_rotation_homography(canvas.k, op, k)};
}

TEST(Warp, IdentityIsLossless) {
  const ImageBuffer src = sinusoid_image(kW, kH);
  for (auto interp : {Interpolation::bilinear, Interpolation::nearest}) {
    WarpOptions opt;
    opt.interpolation = interp;
    const WarpResult out = warp_image(src, Mat3::Identity(), kW, kH, opt);
    EXPECT_EQ(out.image, src);
    EXPECT_TRUE(out.valid.all());
  }
}

TEST(Warp, ConstantColorStaysExact) {
  ImageBuffer src(kW, kH, 3);
  for (int y = 0; y < kH; ++y) {
    for (int x = 0; x < kW; ++x) {
      std::uint8_t* p = src.pixel(x, y);
      p[0] = 17, p[1] = 200, p[2] = 93;
    }
  }
  const Warped w = setup(rotation_from_euler({9, -4, 3}));
  WarpOptions opt;
  opt.fill = {1, 2, 3, 0};
  const WarpResult out = warp_image(src, w.h, w.canvas, opt);
  std::size_t valid = 0;
  for (int y = 0; y < out.image.height(); ++y) {
    for (int x = 0; x < out.image.width(); ++x) {
      const std::uint8_t* p = out.image.pixel(x, y);
      if (out.valid.at(x, y)) {
        ++valid;
        EXPECT_EQ(p[0], 17);
        EXPECT_EQ(p[1], 200);
        EXPECT_EQ(p[2], 93);
      } else {
        EXPECT_EQ(p[0], 1);
        EXPECT_EQ(p[1], 2);
        EXPECT_EQ(p[2], 3);
      }
    }
  }
  EXPECT_GT(valid, static_cast<std::size_t>(kW * kH * 0.95));
}

TEST(Warp, Roll180IsPixelPermutation) {
  const ImageBuffer src = sinusoid_image(kW, kH);
  const Warped w = setup(rotation_from_euler({0, 0, 180}));
  ASSERT_EQ(w.canvas.width, kW);
  ASSERT_EQ(w.canvas.height, kH);
  WarpOptions opt;
  opt.interpolation = Interpolation::nearest;
  const WarpResult out = warp_image(src, w.h, w.canvas, opt);
  EXPECT_TRUE(out.valid.all());
  for (int y = 0; y < kH; ++y) {
    for (int x = 0; x < kW; ++x) {
      const std::uint8_t* a = out.image.pixel(x, y);
      const std::uint8_t* b = src.pixel(kW - 1 - x, kH - 1 - y);
      ASSERT_TRUE(std::equal(a, a + 3, b)) << x << "," << y;
    }
  }
}

TEST(Warp, HorizontalMirrorIsPixelPermutation) {
  const ImageBuffer src = sinusoid_image(kW, kH);
  const Warped w = setup(Reflection::mirror(Axis::x));
  WarpOptions opt;
  opt.interpolation = Interpolation::nearest;
  const WarpResult out = warp_image(src, w.h, w.canvas, opt);
  for (int y = 0; y < kH; ++y) {
    for (int x = 0; x < kW; ++x) ASSERT_EQ(out.image.pixel(x, y)[1], src.pixel(kW - 1 - x, y)[1]);
  }
}

TEST(Warp, ValidityMatchesInverseMapping) {
  const ImageBuffer src = sinusoid_image(kW, kH, 1);
  const Warped w = setup(rotation_from_euler({8, 4, -5}));
  const WarpResult out = warp_image(src, w.h, w.canvas);
  const Mat3 inv = w.h.inverse();
  for (int y = 0; y < w.canvas.height; y += 3) {
    for (int x = 0; x < w.canvas.width; x += 3) {
      const auto p = map_pixel(inv, Vec2(x + 0.5, y + 0.5));
      const bool inside = p && p->x() >= 0 && p->x() <= kW && p->y() >= 0 && p->y() <= kH;
      ASSERT_EQ(out.valid.at(x, y), inside) << x << "," << y;
    }
  }
}

TEST(Warp, DeterministicAcrossWorkersAndTiles) {
  const ImageBuffer src = sinusoid_image(kW, kH);
  const Warped w = setup(rotation_from_euler({10, 5, 5}));
  WarpOptions opt;
  opt.threads = 1;
  const WarpResult base = warp_image(src, w.h, w.canvas, opt);
  for (int threads : {2, 3, 8}) {
    for (int tile : {1, 7, 16, 1000}) {
      opt.threads = threads;
      opt.rows_per_tile = tile;
      const WarpResult out = warp_image(src, w.h, w.canvas, opt);
      EXPECT_EQ(out.image, base.image);
      EXPECT_EQ(out.valid, base.valid);
    }
  }
}

TEST(Warp, Errors) {
  const ImageBuffer src(4, 4, 3);
  try {
    warp_image(src, Mat3::Zero(), 4, 4);
    FAIL() << "expected invalid_homography";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_homography);
  }
  WarpOptions opt;
  opt.max_dimension = 100;
  try {
    warp_image(src, Mat3::Identity(), 101, 4, opt);
    FAIL() << "expected canvas_too_large";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::canvas_too_large);
  }
  EXPECT_THROW(warp_image(src, Mat3::Identity(), 0, 4), Error);
  EXPECT_THROW(warp_mask(src, Mat3::Identity(), CanvasSpec{{}, 4, 4}), Error);
}

TEST(WarpMask, IdentityAndValueSubset) {
  ImageBuffer mask(kW, kH, 1);
  for (int y = 0; y < kH; ++y) {
    for (int x = 0; x < kW; ++x) mask.pixel(x, y)[0] = ((x / 13 + y / 17) % 2) ? 1 : 0;
  }
  EXPECT_EQ(warp_mask(mask, Mat3::Identity(), CanvasSpec{kK, kW, kH}).image, mask);

  for (std::uint64_t i = 0; i < 5; ++i) {
    const CounterRng rng(31, 0, i, 0);
    const Warped w = setup(random_augment_operator(rng));
    const WarpResult out = warp_mask(mask, w.h, w.canvas);
    std::set<int> values;
    for (auto v : out.image.data()) values.insert(v);
    EXPECT_TRUE(values == std::set<int>({0, 1}) || values == std::set<int>({0}) || values == std::set<int>({1}));
  }
}

// Pixel-center rasterization of a convex polygon given counter-clockwise or clockwise.
std::size_t raster_convex(const std::vector<Vec2>& poly, int w, int h) {
  std::size_t n = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec2 p(x + 0.5, y + 0.5);
      int pos = 0, neg = 0;
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % poly.size()];
        const double cross = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
        pos += cross >= 0;
        neg += cross <= 0;
      }
      if (pos == static_cast<int>(poly.size()) || neg == static_cast<int>(poly.size())) ++n;
    }
  }
  return n;
}

TEST(WarpMask, RollPreservesAreaAgainstPolygonRaster) {
  const int size = 512;
  const Intrinsics k{600, 600, 256, 256};
  const std::vector<Vec2> rect = {{150, 180}, {370, 180}, {370, 330}, {150, 330}};
  ImageBuffer mask(size, size, 1);
  for (int y = 180; y < 330; ++y) {
    for (int x = 150; x < 370; ++x) mask.pixel(x, y)[0] = 255;
  }
  const std::size_t src_area = 220 * 150;
  ASSERT_GE(src_area, 1000u);

  for (double roll : {-5.0, 3.0, 20.0, 45.0, 90.0}) {
    const Warped w = setup(rotation_from_euler({0, 0, roll}), k, size, size);
    const WarpResult out = warp_mask(mask, w.h, w.canvas);
    std::size_t area = 0;
    for (auto v : out.image.data()) area += v == 255;

    std::vector<Vec2> poly;
    for (const auto& p : rect) poly.push_back(*map_pixel(w.h, p));
    const std::size_t expected = raster_convex(poly, w.canvas.width, w.canvas.height);
    const double rel = std::abs(static_cast<double>(area) - static_cast<double>(expected)) / expected;
    EXPECT_LT(rel, 0.02) << "roll " << roll;
    EXPECT_LT(std::abs(static_cast<double>(area) - src_area) / src_area, 0.02) << "roll " << roll;
  }
}

}  // namespace
}  // namespace camaug
