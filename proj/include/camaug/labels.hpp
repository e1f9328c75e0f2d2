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
 * @file labels.hpp
 * @brief Applies a sampled transform to an annotated sample and filters objects.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "camaug/canvas.hpp"
#include "camaug/geometry.hpp"

namespace camaug {

struct ObjectAnnotation {
  std::string id;
  std::string category;
  CuboidPose pose;

  bool operator==(const ObjectAnnotation&) const = default;
};

/// One annotated RGB frame. Extrinsics are identity for camera-frame labels.
struct Sample {
  std::string image;
  int width = 0;
  int height = 0;
  Intrinsics intrinsics;
  Extrinsics extrinsics;
  std::vector<ObjectAnnotation> objects;

  bool operator==(const Sample&) const = default;
};

/// Audit trail for one augmentation draw.
struct TransformRecord {
  Orthogonal3 op;
  bool rotated = false;
  EulerAngles euler;
  std::optional<Axis> flip_axis;
  CanvasSpec canvas;
  CanvasMode canvas_mode = CanvasMode::centered;
  std::string seed_path;

  bool is_reflection() const { return flip_axis.has_value(); }

  /// Rotation applied before the optional mirror: op = M * R.
  RotationSO3 rotation() const {
    if (flip_axis) return RotationSO3(Reflection::mirror(*flip_axis).matrix() * op.matrix());
    return RotationSO3(op.matrix());
  }
};

/// Builds the record for `op` with the canvas computed from the source camera.
inline TransformRecord make_record(const Orthogonal3& op, const Intrinsics& k_src, int width, int height,
                                   CanvasMode mode = CanvasMode::centered) {
  TransformRecord rec;
  rec.op = op;
  rec.canvas = realign_principal_point(k_src, width, height, op, mode);
  rec.canvas_mode = mode;
  return rec;
}

/// Source pixel -> canvas pixel.
inline Mat3 homography_for(const TransformRecord& rec, const Intrinsics& k_src) {
  return pure_rotation_homography(rec.canvas.k, rec.op, k_src);
}

// ---------------------------------------------------------------------------
// Object filtering
// ---------------------------------------------------------------------------

enum class OverlapRule {
  /// Drop objects whose projected center leaves the canvas.
  center_inside,
  /// Additionally require the projected-corner box to overlap the canvas by min_overlap_ratio.
  corner_overlap,
};

struct FilterConfig {
  bool enabled = true;
  double min_depth = 0.01;  // meters
  OverlapRule overlap = OverlapRule::center_inside;
  double min_overlap_ratio = 0.5;
  bool small_object_filter = true;
  double min_height_ratio = 0.0625;
};

enum class FilterReason { invalid_depth, outside_canvas, too_small };

inline std::string_view to_string(FilterReason r) {
  switch (r) {
    case FilterReason::invalid_depth: return "invalid_depth";
    case FilterReason::outside_canvas: return "outside_canvas";
    case FilterReason::too_small: return "too_small";
  }
  return "?";
}

struct Removal {
  ObjectAnnotation object;
  FilterReason reason;
};

struct FilterOutcome {
  Sample sample;
  std::vector<Removal> removed;
};

/// Image-space footprint of a cuboid's projected corners.
struct ProjectedBox {
  bool all_in_front = false;  // every corner deeper than the depth threshold
  double u_min = 0, u_max = 0, v_min = 0, v_max = 0;

  double height() const { return all_in_front ? v_max - v_min : std::numeric_limits<double>::infinity(); }
};

inline ProjectedBox projected_box(const Intrinsics& k, const CuboidPose& pose, double min_depth) {
  ProjectedBox box;
  box.all_in_front = true;
  box.u_min = box.v_min = std::numeric_limits<double>::infinity();
  box.u_max = box.v_max = -std::numeric_limits<double>::infinity();
  for (const auto& c : cuboid_corners(pose)) {
    if (!(c.z() > min_depth)) {
      box.all_in_front = false;
      continue;
    }
    const PixelHom p = project(k, c);
    box.u_min = std::min(box.u_min, p.x());
    box.u_max = std::max(box.u_max, p.x());
    box.v_min = std::min(box.v_min, p.y());
    box.v_max = std::max(box.v_max, p.y());
  }
  return box;
}

/// Returns the reason an object would be removed, or nullopt if it is kept.
///
/// Rules: center depth <= min_depth; projected center outside the canvas
/// (or, in corner_overlap mode, too little of the corner box on canvas);
/// projected corner-box height strictly less than min_height_ratio * canvas
/// height. Objects with a corner behind the camera have unbounded height.
inline std::optional<FilterReason> filter_reason(const ObjectAnnotation& obj, const Intrinsics& k, int width,
                                                 int height, const FilterConfig& cfg) {
  const Vec3& t = obj.pose.center;
  if (!(t.z() > cfg.min_depth)) return FilterReason::invalid_depth;

  const PixelHom c = project(k, t);
  if (c.x() < 0.0 || c.x() > width || c.y() < 0.0 || c.y() > height) return FilterReason::outside_canvas;

  const ProjectedBox box = projected_box(k, obj.pose, cfg.min_depth);
  if (cfg.overlap == OverlapRule::corner_overlap && box.all_in_front) {
    const double area = (box.u_max - box.u_min) * (box.v_max - box.v_min);
    const double iw = std::max(0.0, std::min<double>(box.u_max, width) - std::max(box.u_min, 0.0));
    const double ih = std::max(0.0, std::min<double>(box.v_max, height) - std::max(box.v_min, 0.0));
    if (area > 0.0 && iw * ih / area < cfg.min_overlap_ratio) return FilterReason::outside_canvas;
  }

  if (cfg.small_object_filter && box.height() < cfg.min_height_ratio * height) return FilterReason::too_small;
  return std::nullopt;
}

/// Never adds objects; order of survivors is preserved.
inline FilterOutcome filter_objects(const Sample& s, const FilterConfig& cfg = {}) {
  FilterOutcome out{s, {}};
  if (!cfg.enabled) return out;
  out.sample.objects.clear();
  for (const auto& obj : s.objects) {
    if (auto reason = filter_reason(obj, s.intrinsics, s.width, s.height, cfg)) {
      out.removed.push_back({obj, *reason});
    } else {
      out.sample.objects.push_back(obj);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sample transform
// ---------------------------------------------------------------------------

struct TransformedSample {
  Sample sample;
  std::vector<Removal> removed;
  Mat3 homography = Mat3::Identity();  // source pixel -> canvas pixel
};

/// Moves the sample into the rotated (and optionally mirrored) camera:
/// intrinsics and size come from the record's canvas, extrinsics become
/// (op R, op t), and each cuboid is rotated then mirrored. Filtering runs
/// on the result.
inline TransformedSample transform_sample(const Sample& s, const TransformRecord& rec, bool keep_chirality,
                                          const FilterConfig& filter = {}) {
  const RotationSO3 rotation = rec.rotation();
  std::optional<Reflection> mirror;
  if (rec.flip_axis) mirror = Reflection::mirror(*rec.flip_axis);

  Sample moved = s;
  moved.width = rec.canvas.width;
  moved.height = rec.canvas.height;
  moved.intrinsics = rec.canvas.k;
  moved.extrinsics = update_extrinsics(rec.op, s.extrinsics);
  for (auto& obj : moved.objects) {
    obj.pose = update_cuboid_pose(rotation, obj.pose);
    if (mirror) obj.pose = flip_pose(*mirror, obj.pose, keep_chirality);
  }

  FilterOutcome filtered = filter_objects(moved, filter);
  return {std::move(filtered.sample), std::move(filtered.removed), homography_for(rec, s.intrinsics)};
}

// ---------------------------------------------------------------------------
// Gravity audit
// ---------------------------------------------------------------------------

struct GravityCheck {
  Vec3 world_down = Vec3(0.0, 1.0, 0.0);
  int column = 2;
  double min_alignment = 0.9;
};

/// Ids of objects whose gravity column is misaligned with the down vector
/// expressed in the camera frame (|col . down| below min_alignment).
inline std::vector<std::string> gravity_warnings(const Sample& s, const GravityCheck& check = {}) {
  std::vector<std::string> ids;
  const Vec3 down = (s.extrinsics.rotation * check.world_down).normalized();
  for (const auto& obj : s.objects) {
    const double alignment = std::abs(obj.pose.rotation.matrix().col(check.column).dot(down));
    if (alignment < check.min_alignment) ids.push_back(obj.id);
  }
  return ids;
}

}  // namespace camaug
