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
 * @file geometry.hpp
 * @brief Closed-form camera-centric transforms.
 *
 * Camera frame convention: x right, y down, z forward. Yaw turns about y,
 * pitch about x, roll about z, composed as R = R_roll * R_pitch * R_yaw.
 *
 * Rotating the camera about its optical center by an orthogonal operator O
 * moves every camera-space point T to O*T. Because there is no translation,
 * image points map through the depth-independent homography
 * H = K_dst * O * K_src^-1, up to the homogeneous scale.
 */

#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "camaug/error.hpp"

namespace camaug {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Homogeneous pixel (u, v, w); normalized form has w == 1.
using PixelHom = Eigen::Vector3d;

inline constexpr double kOrthogonalityTol = 1e-9;
inline constexpr double kHomogeneousEps = 1e-12;
inline constexpr double kDepthEps = 1e-12;

/// max |M^T M - I|
inline double orthogonality_error(const Mat3& m) {
  return (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
}

namespace detail {

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// cos/sin of an angle in degrees, exact at multiples of 90.
inline std::pair<double, double> cos_sin_deg(double deg) {
  const double quarter = deg / 90.0;
  if (quarter == std::floor(quarter) && std::abs(quarter) < 1e15) {
    const auto q = static_cast<long long>(quarter);
    switch (((q % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double rad = deg * (std::numbers::pi / 180.0);
  return {std::cos(rad), std::sin(rad)};
}

}  // namespace detail

/// Element of O(3): an orthogonal operator with determinant +1 or -1.
class Orthogonal3 {
 public:
  Orthogonal3() = default;

  explicit Orthogonal3(const Mat3& m, double tol = kOrthogonalityTol) : m_(m) {
    if (!m.allFinite()) {
      throw Error(Errc::invalid_argument, "operator has non-finite entries");
    }
    const double err = orthogonality_error(m);
    if (err > tol) {
      throw Error(Errc::invalid_argument,
                  "operator is not orthogonal (max |M^T M - I| = " + detail::fmt_double(err) + ")");
    }
  }

  const Mat3& matrix() const noexcept { return m_; }
  double det() const { return m_.determinant(); }
  bool is_proper() const { return det() > 0.0; }

  Orthogonal3 transpose() const { return Orthogonal3(m_.transpose(), Trusted{}); }

  bool operator==(const Orthogonal3& o) const { return m_ == o.m_; }

  friend Orthogonal3 operator*(const Orthogonal3& a, const Orthogonal3& b) {
    return Orthogonal3(a.m_ * b.m_, Trusted{});
  }
  friend Vec3 operator*(const Orthogonal3& a, const Vec3& v) { return a.m_ * v; }

 protected:
  struct Trusted {};
  Orthogonal3(const Mat3& m, Trusted) : m_(m) {}

 private:
  Mat3 m_ = Mat3::Identity();
};

/// Proper rotation, det = +1.
class RotationSO3 : public Orthogonal3 {
 public:
  RotationSO3() = default;

  explicit RotationSO3(const Mat3& m, double tol = kOrthogonalityTol) : Orthogonal3(m, tol) {
    if (std::abs(det() - 1.0) > tol) {
      throw Error(Errc::invalid_argument, "rotation must have det +1, got " + detail::fmt_double(det()));
    }
  }

  static RotationSO3 about_x(double deg) {
    const auto [c, s] = detail::cos_sin_deg(deg);
    Mat3 m;
    m << 1, 0, 0, 0, c, -s, 0, s, c;
    return RotationSO3(m, Trusted{});
  }
  static RotationSO3 about_y(double deg) {
    const auto [c, s] = detail::cos_sin_deg(deg);
    Mat3 m;
    m << c, 0, s, 0, 1, 0, -s, 0, c;
    return RotationSO3(m, Trusted{});
  }
  static RotationSO3 about_z(double deg) {
    const auto [c, s] = detail::cos_sin_deg(deg);
    Mat3 m;
    m << c, -s, 0, s, c, 0, 0, 0, 1;
    return RotationSO3(m, Trusted{});
  }

  RotationSO3 inverse() const { return RotationSO3(matrix().transpose(), Trusted{}); }

  friend RotationSO3 operator*(const RotationSO3& a, const RotationSO3& b) {
    return RotationSO3(a.matrix() * b.matrix(), Trusted{});
  }

 private:
  RotationSO3(const Mat3& m, Trusted t) : Orthogonal3(m, t) {}
};

enum class Axis { x, y, z };

inline std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

/// Improper orthogonal operator, det = -1.
class Reflection : public Orthogonal3 {
 public:
  explicit Reflection(const Mat3& m, double tol = kOrthogonalityTol) : Orthogonal3(m, tol) {
    if (std::abs(det() + 1.0) > tol) {
      throw Error(Errc::invalid_argument, "reflection must have det -1, got " + detail::fmt_double(det()));
    }
  }

  /// Mirror that negates one camera axis; Axis::x is the horizontal image flip.
  static Reflection mirror(Axis axis) {
    Mat3 m = Mat3::Identity();
    m(static_cast<int>(axis), static_cast<int>(axis)) = -1.0;
    return Reflection(m, Trusted{});
  }

  bool is_axis_aligned() const {
    const Mat3& m = matrix();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        if (r != c && m(r, c) != 0.0) return false;
      }
    }
    return true;
  }

 private:
  Reflection(const Mat3& m, Trusted t) : Orthogonal3(m, t) {}
};

/// Pinhole intrinsics (zero skew), pixel units.
struct Intrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  Mat3 matrix() const {
    Mat3 k;
    k << fx, 0, cx, 0, fy, cy, 0, 0, 1;
    return k;
  }

  Mat3 inverse_matrix() const {
    Mat3 k;
    k << 1.0 / fx, 0, -cx / fx, 0, 1.0 / fy, -cy / fy, 0, 0, 1;
    return k;
  }

  Intrinsics with_principal_point(double new_cx, double new_cy) const { return {fx, fy, new_cx, new_cy}; }

  bool operator==(const Intrinsics&) const = default;
};

inline void validate(const Intrinsics& k) {
  if (!(std::isfinite(k.fx) && std::isfinite(k.fy) && std::isfinite(k.cx) && std::isfinite(k.cy))) {
    throw Error(Errc::invalid_intrinsics, "intrinsics must be finite");
  }
  if (!(k.fx > 0.0 && k.fy > 0.0)) {
    throw Error(Errc::invalid_intrinsics, "focal lengths must be positive");
  }
}

/// World-to-camera transform. The rotation may be improper after a raw mirror.
struct Extrinsics {
  Orthogonal3 rotation;
  Vec3 translation = Vec3::Zero();

  bool operator==(const Extrinsics&) const = default;
};

/// Box side lengths: width along local x, height along local y, length along local z.
struct BoxSize {
  double width = 1.0;
  double height = 1.0;
  double length = 1.0;

  bool operator==(const BoxSize&) const = default;
};

/// Cuboid in camera coordinates: corners = rotation * offsets + center.
struct CuboidPose {
  Orthogonal3 rotation;
  Vec3 center = Vec3::Zero();
  BoxSize size;

  bool operator==(const CuboidPose&) const = default;
};

/// Degrees.
struct EulerAngles {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;

  bool operator==(const EulerAngles&) const = default;
};

using Corners = std::array<Vec3, 8>;

// ---------------------------------------------------------------------------
// Rotation construction and point/pose transforms
// ---------------------------------------------------------------------------

inline RotationSO3 rotation_from_euler(const EulerAngles& a) {
  if (!(std::isfinite(a.yaw) && std::isfinite(a.pitch) && std::isfinite(a.roll))) {
    throw Error(Errc::invalid_argument, "euler angles must be finite");
  }
  return RotationSO3::about_z(a.roll) * RotationSO3::about_x(a.pitch) * RotationSO3::about_y(a.yaw);
}

inline Vec3 world_to_camera(const Extrinsics& ext, const Vec3& t_w) {
  return ext.rotation.matrix() * t_w + ext.translation;
}

inline Vec3 rotate_camera_point(const Orthogonal3& r_c, const Vec3& t_c) { return r_c * t_c; }

inline Extrinsics update_extrinsics(const Orthogonal3& r_c, const Extrinsics& ext) {
  return {r_c * ext.rotation, r_c * ext.translation};
}

/// Local corner offsets (+-W/2, +-H/2, +-L/2). Corner i takes the sign of
/// W from bit 2, H from bit 1 and L from bit 0 (0 = minus), which yields the
/// lexicographic order ---, --+, -+-, -++, +--, +-+, ++-, +++.
inline Corners box_offsets(const BoxSize& s) {
  if (!(s.width > 0.0 && s.height > 0.0 && s.length > 0.0) ||
      !(std::isfinite(s.width) && std::isfinite(s.height) && std::isfinite(s.length))) {
    throw Error(Errc::invalid_argument, "cuboid size must be finite and positive");
  }
  Corners out;
  for (int i = 0; i < 8; ++i) {
    out[i] = Vec3((i & 4) ? s.width / 2 : -s.width / 2,
                  (i & 2) ? s.height / 2 : -s.height / 2,
                  (i & 1) ? s.length / 2 : -s.length / 2);
  }
  return out;
}

inline Corners cuboid_corners(const CuboidPose& pose) {
  Corners out = box_offsets(pose.size);
  for (auto& c : out) c = pose.rotation.matrix() * c + pose.center;
  return out;
}

/// Left-multiplies orientation and center; size is untouched.
inline CuboidPose update_cuboid_pose(const Orthogonal3& r_c, const CuboidPose& pose) {
  return {r_c * pose.rotation, r_c * pose.center, pose.size};
}

// ---------------------------------------------------------------------------
// Projection and homographies
// ---------------------------------------------------------------------------

inline PixelHom project(const Intrinsics& k, const Vec3& t_c) {
  if (std::abs(t_c.z()) <= kDepthEps) {
    throw Error(Errc::degenerate_depth, "point depth is numerically zero");
  }
  if (t_c.z() < 0.0) {
    throw Error(Errc::behind_camera, "point lies behind the camera");
  }
  return {k.fx * t_c.x() / t_c.z() + k.cx, k.fy * t_c.y() / t_c.z() + k.cy, 1.0};
}

/// Divides by w; returns nullopt for points at infinity or behind (w <= 1e-12).
inline std::optional<Vec2> dehomogenize(const Vec3& p) {
  if (!(p.z() > kHomogeneousEps)) return std::nullopt;
  return Vec2(p.x() / p.z(), p.y() / p.z());
}

inline std::optional<Vec2> map_pixel(const Mat3& h, const Vec2& p) {
  return dehomogenize(h * Vec3(p.x(), p.y(), 1.0));
}

/// H = K_dst * O * K_src^-1. Independent of scene depth.
inline Mat3 pure_rotation_homography(const Intrinsics& k_dst, const Orthogonal3& op, const Intrinsics& k_src) {
  validate(k_dst);
  validate(k_src);
  return k_dst.matrix() * op.matrix() * k_src.inverse_matrix();
}

// ---------------------------------------------------------------------------
// Reflections
// ---------------------------------------------------------------------------

/// The mirror expressed in the object's local frame. Axis-aligned mirrors
/// are used as-is; any other reflection falls back to the local x mirror.
/// Either choice maps the local offset set onto itself.
inline Mat3 local_mirror(const Reflection& m) {
  if (m.is_axis_aligned()) return m.matrix();
  return Reflection::mirror(Axis::x).matrix();
}

/// keep_chirality == false gives (M R, M t), an improper orientation.
/// keep_chirality == true gives (M R M_loc, M t), a proper rotation with the
/// same corner set, reordered by the sign pattern of M_loc.
inline CuboidPose flip_pose(const Reflection& m, const CuboidPose& pose, bool keep_chirality) {
  CuboidPose out{m * pose.rotation, m * pose.center, pose.size};
  if (keep_chirality) {
    out.rotation = out.rotation * Orthogonal3(local_mirror(m));
  }
  return out;
}

struct FlipComposition {
  Orthogonal3 op;
  Extrinsics extrinsics;
};

/// Rotate by r first, then mirror by m.
inline FlipComposition compose_flip_rotation(const Reflection& m, const RotationSO3& r, const Extrinsics& ext) {
  const Orthogonal3 op = m * r;
  return {op, update_extrinsics(op, ext)};
}

// ---------------------------------------------------------------------------
// General linear operators
// ---------------------------------------------------------------------------

struct AffineDecomposition {
  bool admissible = false;
  double scale = 0.0;             // lambda, valid when admissible
  Mat3 orthogonal = Mat3::Zero();  // A / lambda, valid when admissible
  double deviation = 0.0;         // max |A^T A - lambda^2 I| / lambda^2
};

/// A linear map keeps every cuboid a cuboid only if A^T A = lambda^2 I, i.e.
/// A is a uniform scaling times an orthogonal matrix. `tol` bounds the
/// deviation relative to lambda^2.
inline AffineDecomposition admissible_affine_decompose(const Mat3& a, double tol = kOrthogonalityTol) {
  if (!a.allFinite()) throw Error(Errc::invalid_argument, "matrix has non-finite entries");
  if (std::abs(a.determinant()) <= tol) throw Error(Errc::invalid_argument, "matrix is singular");

  const Mat3 ata = a.transpose() * a;
  const double lambda_sq = ata.trace() / 3.0;

  AffineDecomposition out;
  out.deviation = (ata - lambda_sq * Mat3::Identity()).cwiseAbs().maxCoeff() / lambda_sq;
  if (out.deviation <= tol) {
    out.admissible = true;
    out.scale = std::sqrt(lambda_sq);
    out.orthogonal = a / out.scale;
  }
  return out;
}

}  // namespace camaug
