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
#include <cstdint>
#include <string>

#include "camaug/labels.hpp"

namespace camaug {

/// Augmentation hyperparameters. Angles are half-widths of symmetric ranges in degrees.
struct AugmentConfig {
  double p_rotation = 0.8;
  double yaw_range = 10.0;
  double pitch_range = 5.0;
  double roll_range = 5.0;
  double p_flip = 0.5;
  Axis flip_axis = Axis::x;
  bool keep_chirality = true;
  bool center_realign = true;
  FilterConfig filter;
  /// Also filter the source labels before transforming them.
  bool filter_before = false;
  std::uint64_t seed = 42;
  std::uint64_t epoch = 0;
  int variants_per_sample = 1;
};

inline void validate(const AugmentConfig& cfg) {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_argument, std::string(name) + " must lie in [0, 1]");
  };
  auto range = [](double r, double limit, const char* name) {
    if (!(r >= 0.0 && r <= limit)) {
      throw Error(Errc::invalid_argument,
                  std::string(name) + " must lie in [0, " + detail::fmt_double(limit) + "] degrees");
    }
  };
  prob(cfg.p_rotation, "p_rotation");
  prob(cfg.p_flip, "p_flip");
  range(cfg.yaw_range, 180.0, "yaw_range");
  // Pitch of 90 degrees or more turns some image rays fully sideways.
  range(cfg.pitch_range, 89.0, "pitch_range");
  range(cfg.roll_range, 180.0, "roll_range");
  prob(cfg.filter.min_height_ratio, "min_height_ratio");
  prob(cfg.filter.min_overlap_ratio, "min_overlap_ratio");
  if (!(cfg.filter.min_depth >= 0.0)) throw Error(Errc::invalid_argument, "min_depth must be non-negative");
  if (cfg.variants_per_sample < 1) throw Error(Errc::invalid_argument, "variants_per_sample must be positive");
}

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: the value at each counter is a pure function of
/// (seed, epoch, sample, variant, counter), so draws do not depend on the
/// order in which samples are processed.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t epoch, std::uint64_t sample, std::uint64_t variant)
      : key_(splitmix64(splitmix64(splitmix64(splitmix64(seed) ^ epoch) ^ sample) ^ variant)) {}

  std::uint64_t bits(std::uint64_t counter) const { return splitmix64(key_ ^ (counter * 0xd1b54a32d192ed03ULL)); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

  /// Uniform in [-half_width, half_width).
  double symmetric(std::uint64_t counter, double half_width) const {
    return (2.0 * uniform(counter) - 1.0) * half_width;
  }

 private:
  std::uint64_t key_;
};

/// Fixed counter slots, so the flip draw is independent of whether the rotation fired.
enum RngSlot : std::uint64_t { kSlotRotate = 0, kSlotYaw = 1, kSlotPitch = 2, kSlotRoll = 3, kSlotFlip = 4 };

/// Draws one transform. Rotation fires with p_rotation and samples yaw, pitch
/// and roll uniformly from their ranges; the mirror fires with p_flip and is
/// composed after the rotation when both fire. The canvas is left empty; see
/// with_canvas.
inline TransformRecord sample_transform(const AugmentConfig& cfg, std::uint64_t sample_index,
                                        std::uint64_t variant_index) {
  const CounterRng rng(cfg.seed, cfg.epoch, sample_index, variant_index);

  TransformRecord rec;
  rec.canvas_mode = cfg.center_realign ? CanvasMode::centered : CanvasMode::bounding_box;
  rec.seed_path = "seed=" + std::to_string(cfg.seed) + "/epoch=" + std::to_string(cfg.epoch) +
                  "/sample=" + std::to_string(sample_index) + "/variant=" + std::to_string(variant_index);

  RotationSO3 rotation;
  if (rng.uniform(kSlotRotate) < cfg.p_rotation) {
    rec.rotated = true;
    rec.euler = {rng.symmetric(kSlotYaw, cfg.yaw_range), rng.symmetric(kSlotPitch, cfg.pitch_range),
                 rng.symmetric(kSlotRoll, cfg.roll_range)};
    rotation = rotation_from_euler(rec.euler);
  }
  rec.op = rotation;
  if (rng.uniform(kSlotFlip) < cfg.p_flip) {
    rec.flip_axis = cfg.flip_axis;
    rec.op = Reflection::mirror(cfg.flip_axis) * rotation;
  }
  return rec;
}

/// Fills the record's canvas for a source camera.
inline TransformRecord with_canvas(TransformRecord rec, const Intrinsics& k_src, int width, int height) {
  rec.canvas = realign_principal_point(k_src, width, height, rec.op, rec.canvas_mode);
  return rec;
}

}  // namespace camaug
