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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

#include "camaug/camaug.hpp"

namespace camaug::testing {

inline const Intrinsics kK{500.0, 500.0, 320.0, 240.0};
constexpr int kW = 640;
constexpr int kH = 480;

inline CuboidPose make_pose(const Mat3& r, const Vec3& t, const BoxSize& s) { return {Orthogonal3(r), t, s}; }

inline ObjectAnnotation make_object(const std::string& id, const CuboidPose& pose, const std::string& category = "chair") {
  return {id, category, pose};
}

/// Random proper pose with its center in front of the camera.
inline CuboidPose random_pose(const CounterRng& rng) {
  CuboidPose pose;
  pose.rotation = Orthogonal3(oracle::random_rotation(rng, 20));
  pose.center = Vec3(rng.symmetric(0, 3.0), rng.symmetric(1, 2.0), 0.5 + 9.5 * rng.uniform(2));
  pose.size = {0.05 + 3.0 * rng.uniform(3), 0.05 + 3.0 * rng.uniform(4), 0.05 + 3.0 * rng.uniform(5)};
  return pose;
}

/// A small indoor-looking sample: three objects, one of them tiny.
inline Sample make_sample(const std::string& image = "scene.png", int width = kW, int height = kH) {
  Sample s;
  s.image = image;
  s.width = width;
  s.height = height;
  s.intrinsics = {0.8 * width, 0.8 * width, width / 2.0, height / 2.0};
  s.objects.push_back(make_object("0", make_pose(RotationSO3::about_y(30).matrix(), {0.4, 0.3, 3.0}, {0.6, 0.9, 0.5})));
  s.objects.push_back(make_object("1", make_pose(Mat3::Identity(), {-1.0, 0.5, 5.0}, {1.8, 0.8, 0.9}), "table"));
  s.objects.push_back(make_object("2", make_pose(Mat3::Identity(), {0.2, -0.1, 8.0}, {0.05, 0.05, 0.05}), "cup"));
  return s;
}

/// Sum of low-frequency sinusoids, one phase per channel.
inline ImageBuffer sinusoid_image(int width, int height, int channels = 3) {
  ImageBuffer img(width, height, channels);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) {
        const double v = 127.5 + 50.0 * std::sin(2.0 * std::numbers::pi * (x / 97.0 + c / 3.0)) +
                         40.0 * std::cos(2.0 * std::numbers::pi * (y / 71.0 - c / 5.0)) +
                         20.0 * std::sin(2.0 * std::numbers::pi * (x + y) / 131.0);
        img.pixel(x, y)[c] = detail::round_to_u8(std::clamp(v, 0.0, 255.0));
      }
    }
  }
  return img;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("camaug_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace camaug::testing
