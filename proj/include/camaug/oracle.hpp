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
 * @file oracle.hpp
 * @brief Brute-force verifiers for the closed-form transforms.
 *
 * The checks re-derive projections, corners and orthogonal samples on their
 * own and only call into geometry.hpp for the object under test (the
 * homography, the updated pose, the affine verdict). All randomness is
 * counter-based on (seed, trial), so results are independent of threading.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "camaug/canvas.hpp"
#include "camaug/geometry.hpp"
#include "camaug/sampler.hpp"

namespace camaug::oracle {

// ---------------------------------------------------------------------------
// Independent primitives
// ---------------------------------------------------------------------------

/// Pinhole projection written out longhand; nullopt when z <= 0.
inline std::optional<Vec2> pinhole(const Intrinsics& k, const Vec3& p) {
  if (!(p.z() > 0.0)) return std::nullopt;
  return Vec2(k.fx * (p.x() / p.z()) + k.cx, k.fy * (p.y() / p.z()) + k.cy);
}

/// Ray through pixel (u, v) scaled to depth z.
inline Vec3 back_project(const Intrinsics& k, double u, double v, double z) {
  return {(u - k.cx) / k.fx * z, (v - k.cy) / k.fy * z, z};
}

/// Standard normal draw from two counter slots (Box-Muller).
inline double gaussian(const CounterRng& rng, std::uint64_t slot) {
  const double u1 = 1.0 - rng.uniform(slot);  // (0, 1]
  const double u2 = rng.uniform(slot + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Haar-uniform rotation from a normalized Gaussian quaternion.
inline Mat3 random_rotation(const CounterRng& rng, std::uint64_t slot = 0) {
  double w = gaussian(rng, slot), x = gaussian(rng, slot + 2), y = gaussian(rng, slot + 4), z = gaussian(rng, slot + 6);
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n, x /= n, y /= n, z /= n;
  Mat3 r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
      2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
      2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
  return r;
}

/// Uniform over O(3): a random rotation, negated with probability 1/2.
inline Mat3 random_orthogonal(const CounterRng& rng, std::uint64_t slot = 0) {
  const Mat3 r = random_rotation(rng, slot);
  return rng.uniform(slot + 8) < 0.5 ? Mat3(-r) : r;
}

namespace detail {

inline int worker_count(int threads, std::size_t trials) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min<int>(workers, static_cast<int>(std::min<std::size_t>(trials, 256))));
}

// Calls fn(worker, begin, end) over contiguous chunks of [0, trials).
template <typename Fn>
void parallel_trials(std::size_t trials, int workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0, 0, trials);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(trials, begin + chunk);
    if (begin < end) pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Projective consistency
// ---------------------------------------------------------------------------

struct ProjectiveReport {
  double max_residual_px = 0.0;
  std::size_t trials = 0;
  std::size_t accepted = 0;  // points visible in both views
  std::uint64_t seed = 0;
};

/// Compares H-mapped source pixels with transform-then-project pixels for
/// random points in the source frustum at log-uniform depths in [0.3, 20] m.
/// Points that leave the destination frustum or canvas are rejected.
inline ProjectiveReport check_homography(const Mat3& h, const Intrinsics& k_src, int src_width, int src_height,
                                         const Mat3& op, const Intrinsics& k_dst, int dst_width, int dst_height,
                                         std::size_t trials, std::uint64_t seed, int threads = 1) {
  struct Partial {
    double max_residual = 0.0;
    std::size_t accepted = 0;
  };
  const int workers = detail::worker_count(threads, trials);
  std::vector<Partial> partial(workers);
  const double log_near = std::log(0.3);
  const double log_far = std::log(20.0);

  detail::parallel_trials(trials, workers, [&](int worker, std::size_t begin, std::size_t end) {
    Partial& out = partial[worker];
    for (std::size_t t = begin; t < end; ++t) {
      const CounterRng rng(seed, 0, t, 0);
      const double u = rng.uniform(0) * src_width;
      const double v = rng.uniform(1) * src_height;
      const double z = std::exp(log_near + rng.uniform(2) * (log_far - log_near));
      const Vec3 point = back_project(k_src, u, v, z);

      const Vec3 moved = op * point;
      const auto expected = pinhole(k_dst, moved);
      if (!expected || expected->x() < 0.0 || expected->x() > dst_width || expected->y() < 0.0 ||
          expected->y() > dst_height) {
        continue;
      }
      const auto source_px = pinhole(k_src, point);
      const Vec3 mapped = h * Vec3(source_px->x(), source_px->y(), 1.0);
      ++out.accepted;
      if (!(std::abs(mapped.z()) > kHomogeneousEps)) {
        out.max_residual = std::numeric_limits<double>::infinity();
        continue;
      }
      const Vec2 got(mapped.x() / mapped.z(), mapped.y() / mapped.z());
      const double residual = (got - *expected).norm();
      if (std::isnan(residual)) {
        out.max_residual = std::numeric_limits<double>::infinity();
      } else {
        out.max_residual = std::max(out.max_residual, residual);
      }
    }
  });

  ProjectiveReport report;
  report.trials = trials;
  report.seed = seed;
  for (const auto& p : partial) {
    report.max_residual_px = std::max(report.max_residual_px, p.max_residual);
    report.accepted += p.accepted;
  }
  return report;
}

/// End-to-end check of the library path: canvas from realign_principal_point,
/// homography from pure_rotation_homography.
inline ProjectiveReport check_projective_consistency(const Intrinsics& k_src, int width, int height,
                                                     const Orthogonal3& op, std::size_t trials, std::uint64_t seed,
                                                     CanvasMode mode = CanvasMode::centered, int threads = 1) {
  const CanvasSpec canvas = realign_principal_point(k_src, width, height, op, mode);
  const Mat3 h = pure_rotation_homography(canvas.k, op, k_src);
  return check_homography(h, k_src, width, height, op.matrix(), canvas.k, canvas.width, canvas.height, trials, seed,
                          threads);
}

// ---------------------------------------------------------------------------
// Cuboid consistency
// ---------------------------------------------------------------------------

struct CuboidReport {
  double max_deviation = 0.0;  // meters
  bool order_exact = false;    // corner i matched corner i
  bool bijective = false;      // nearest-neighbour matching is a permutation
};

/// Compares the corners of the library-updated pose with op applied to
/// corners built here from (R, t, size). Proper operators go through
/// update_cuboid_pose, improper ones through flip_pose.
inline CuboidReport check_cuboid_consistency(const CuboidPose& pose, const Orthogonal3& op, bool keep_chirality) {
  std::array<Vec3, 8> expected;
  const BoxSize& s = pose.size;
  int n = 0;
  for (double sx : {-0.5, 0.5}) {
    for (double sy : {-0.5, 0.5}) {
      for (double sz : {-0.5, 0.5}) {
        const Vec3 local(sx * s.width, sy * s.height, sz * s.length);
        expected[n++] = op.matrix() * (pose.rotation.matrix() * local + pose.center);
      }
    }
  }

  const CuboidPose updated = op.is_proper() ? update_cuboid_pose(op, pose)
                                            : flip_pose(Reflection(op.matrix()), pose, keep_chirality);
  const Corners got = cuboid_corners(updated);

  CuboidReport report;
  report.order_exact = true;
  std::array<bool, 8> used{};
  report.bijective = true;
  for (int i = 0; i < 8; ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 8; ++j) {
      const double d = (got[j] - expected[i]).cwiseAbs().maxCoeff();
      if (d < best_d) best_d = d, best = j;
    }
    if (best != i) report.order_exact = false;
    if (used[best]) report.bijective = false;
    used[best] = true;
    report.max_deviation = std::max(report.max_deviation, best_d);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Affine admissibility
// ---------------------------------------------------------------------------

struct AffineAgreement {
  bool agree = false;
  bool closed_form_admissible = false;
  bool brute_force_admissible = false;
  double worst_off_diagonal = 0.0;  // relative to the largest diagonal entry
  std::size_t samples = 0;
};

/// A keeps every cuboid factorable iff (A O)^T (A O) is diagonal for every
/// O in O(3). Samples O uniformly (both determinant signs) and compares the
/// all-pass verdict with admissible_affine_decompose.
inline AffineAgreement brute_force_affine_check(const Mat3& a, std::size_t samples, std::uint64_t seed,
                                                double tol = kOrthogonalityTol) {
  AffineAgreement out;
  out.samples = samples;
  out.closed_form_admissible = admissible_affine_decompose(a, tol).admissible;

  out.brute_force_admissible = true;
  for (std::size_t i = 0; i < samples; ++i) {
    const CounterRng rng(seed, 1, i, 0);
    const Mat3 b = a * random_orthogonal(rng);
    const Mat3 gram = b.transpose() * b;
    const double scale = gram.diagonal().cwiseAbs().maxCoeff();
    double off = 0.0;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        if (r != c) off = std::max(off, std::abs(gram(r, c)));
      }
    }
    off /= scale;
    out.worst_off_diagonal = std::max(out.worst_off_diagonal, off);
    if (off > tol) out.brute_force_admissible = false;
  }
  out.agree = out.closed_form_admissible == out.brute_force_admissible;
  return out;
}

// ---------------------------------------------------------------------------
// Canvas containment
// ---------------------------------------------------------------------------

struct CanvasReport {
  double max_excess_px = 0.0;    // how far any mapped pixel lands outside [0,W]x[0,H]
  double center_offset_px = 0.0;  // |principal point - canvas center|, max over axes
  std::size_t samples = 0;
};

/// Maps random source locations (plus the four corners) through
/// K_C * op * K_src^-1 and measures how far they fall outside the canvas.
inline CanvasReport check_canvas(const Intrinsics& k_src, int width, int height, const Orthogonal3& op,
                                 std::size_t samples, std::uint64_t seed) {
  const CanvasSpec canvas = realign_principal_point(k_src, width, height, op);
  CanvasReport report;
  report.samples = samples;
  report.center_offset_px =
      std::max(std::abs(canvas.k.cx - canvas.width / 2.0), std::abs(canvas.k.cy - canvas.height / 2.0));

  auto excess = [&](double u, double v) {
    const Vec3 ray = back_project(k_src, u, v, 1.0);
    const auto p = pinhole(canvas.k, op * ray);
    if (!p) return std::numeric_limits<double>::infinity();
    return std::max({0.0, -p->x(), p->x() - canvas.width, -p->y(), p->y() - canvas.height});
  };
  for (const auto& [u, v] : std::array<std::pair<double, double>, 4>{
           {{0.0, 0.0}, {double(width), 0.0}, {0.0, double(height)}, {double(width), double(height)}}}) {
    report.max_excess_px = std::max(report.max_excess_px, excess(u, v));
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const CounterRng rng(seed, 2, i, 0);
    report.max_excess_px = std::max(report.max_excess_px, excess(rng.uniform(0) * width, rng.uniform(1) * height));
  }
  return report;
}

}  // namespace camaug::oracle
