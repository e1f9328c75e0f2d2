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

#include "fixtures.hpp"

namespace camaug {
namespace {

using testing::kH;
using testing::kK;
using testing::kW;

TEST(Canvas, IdentityKeepsCenteredSource) {
  const CanvasSpec c = realign_principal_point(kK, kW, kH, RotationSO3());
  EXPECT_EQ(c.width, kW);
  EXPECT_EQ(c.height, kH);
  EXPECT_EQ(c.k, kK);
}

TEST(Canvas, IdentityRecentersOffCenterPrincipalPoint) {
  const Intrinsics k{500, 500, 300, 250};
  const CanvasSpec c = realign_principal_point(k, kW, kH, RotationSO3());
  // x_max = 340 (right edge), y_max = 250 (top edge).
  EXPECT_EQ(c.width, 680);
  EXPECT_EQ(c.height, 500);
  EXPECT_EQ(c.k.cx, 340);
  EXPECT_EQ(c.k.cy, 250);
}

TEST(Canvas, Roll90) {
  const CanvasSpec c = realign_principal_point(kK, kW, kH, rotation_from_euler({0, 0, 90}));
  EXPECT_EQ(c.width, 480);
  EXPECT_EQ(c.height, 640);
  EXPECT_EQ(c.k.cx, 240);
  EXPECT_EQ(c.k.cy, 320);
  EXPECT_EQ(c.k.fx, kK.fx);
}

TEST(Canvas, Yaw10Widens) {
  const CanvasSpec c = realign_principal_point(kK, kW, kH, rotation_from_euler({10, 0, 0}));
  EXPECT_GT(c.width, kW);
  EXPECT_GE(c.height, kH);
}

TEST(Canvas, PrincipalPointAtCenter) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const CounterRng rng(21, 0, i, 0);
    const Intrinsics k{300 + 900 * rng.uniform(0), 300 + 900 * rng.uniform(1), 200 + 240 * rng.uniform(2),
                       150 + 180 * rng.uniform(3)};
    const Orthogonal3 op = random_augment_operator(rng, 30, 5, 5);
    const CanvasSpec c = realign_principal_point(k, kW, kH, op);
    EXPECT_EQ(c.k.cx, c.width / 2.0);
    EXPECT_EQ(c.k.cy, c.height / 2.0);
    EXPECT_EQ(c.k.fx, k.fx);
    EXPECT_EQ(c.k.fy, k.fy);
  }
}

TEST(Canvas, ContainsEveryMappedPixel) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const CounterRng rng(22, 0, i, 0);
    const Orthogonal3 op = random_augment_operator(rng, 30, 5, 5);
    const auto rep = oracle::check_canvas(kK, kW, kH, op, 2000, i);
    EXPECT_LE(rep.max_excess_px, 0.5);
    EXPECT_LE(rep.center_offset_px, 0.5);
  }
}

// Width peaks once the image diagonal (36.87 degrees for 4:3) turns horizontal.
TEST(Canvas, GrowsWithRollUpToTheDiagonal) {
  int prev_w = 0;
  for (double roll = 0; roll <= 35; roll += 5) {
    const CanvasSpec c = realign_principal_point(kK, kW, kH, rotation_from_euler({0, 0, roll}));
    EXPECT_GE(c.width, prev_w);
    prev_w = c.width;
  }
}

TEST(Canvas, MirrorDoesNotChangeCenteredCanvas) {
  const CanvasSpec a = realign_principal_point(kK, kW, kH, RotationSO3());
  const CanvasSpec b = realign_principal_point(kK, kW, kH, Reflection::mirror(Axis::x));
  EXPECT_EQ(a.width, b.width);
  EXPECT_EQ(a.height, b.height);
  EXPECT_EQ(a.k, b.k);
}

TEST(Canvas, BoundingBoxModeShiftsPrincipalPoint) {
  const CanvasSpec id = realign_principal_point(kK, kW, kH, RotationSO3(), CanvasMode::bounding_box);
  EXPECT_EQ(id.width, kW);
  EXPECT_EQ(id.height, kH);
  EXPECT_EQ(id.k, kK);

  const CanvasSpec c = realign_principal_point(kK, kW, kH, rotation_from_euler({10, 0, 0}), CanvasMode::bounding_box);
  const CanvasSpec centered = realign_principal_point(kK, kW, kH, rotation_from_euler({10, 0, 0}));
  EXPECT_LT(c.width, centered.width);
  EXPECT_NE(c.k.cx, c.width / 2.0);
}

TEST(Canvas, BoundingBoxModeIsProjectivelyConsistent) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const CounterRng rng(23, 0, i, 0);
    const auto rep = oracle::check_projective_consistency(kK, kW, kH, random_augment_operator(rng), 2000, i,
                                                          CanvasMode::bounding_box);
    EXPECT_LE(rep.max_residual_px, 1e-6);
  }
}

TEST(Canvas, Errors) {
  EXPECT_THROW(realign_principal_point(kK, 0, kH, RotationSO3()), Error);
  EXPECT_THROW(realign_principal_point({0, 1, 0, 0}, kW, kH, RotationSO3()), Error);
  try {
    realign_principal_point(kK, kW, kH, rotation_from_euler({90, 0, 0}));
    FAIL() << "expected excessive_rotation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::excessive_rotation);
  }
}

}  // namespace
}  // namespace camaug
