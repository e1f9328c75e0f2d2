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
 * @file pipeline.hpp
 * @brief Dataset-level drivers behind the command line tool.
 *
 * augment_in_memory is the single code path that turns (image, labels,
 * config, indices) into an augmented sample. run_augment wraps it with file
 * I/O and a worker pool; in-process callers get identical bytes.
 */

#pragma once

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "camaug/dataset.hpp"
#include "camaug/oracle.hpp"
#include "camaug/png_io.hpp"
#include "camaug/render.hpp"
#include "camaug/sampler.hpp"
#include "camaug/warp.hpp"

namespace camaug {

// ---------------------------------------------------------------------------
// Configuration files
// ---------------------------------------------------------------------------

inline Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  if (s == "z") return Axis::z;
  throw Error(Errc::invalid_argument, "flip axis must be x, y or z (got '" + s + "')");
}

inline OverlapRule parse_overlap_rule(const std::string& s) {
  if (s == "center") return OverlapRule::center_inside;
  if (s == "corners") return OverlapRule::corner_overlap;
  throw Error(Errc::invalid_argument, "overlap rule must be 'center' or 'corners' (got '" + s + "')");
}

/// Applies the keys of a JSON object onto `cfg`. Keys use the snake_case
/// field names; unknown keys are rejected.
inline void apply_config_json(AugmentConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::invalid_argument, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "p_rotation") cfg.p_rotation = value.get<double>();
      else if (key == "yaw_range") cfg.yaw_range = value.get<double>();
      else if (key == "pitch_range") cfg.pitch_range = value.get<double>();
      else if (key == "roll_range") cfg.roll_range = value.get<double>();
      else if (key == "p_flip") cfg.p_flip = value.get<double>();
      else if (key == "flip_axis") cfg.flip_axis = parse_axis(value.get<std::string>());
      else if (key == "keep_chirality") cfg.keep_chirality = value.get<bool>();
      else if (key == "center_realign") cfg.center_realign = value.get<bool>();
      else if (key == "filter") cfg.filter.enabled = value.get<bool>();
      else if (key == "filter_before") cfg.filter_before = value.get<bool>();
      else if (key == "min_depth") cfg.filter.min_depth = value.get<double>();
      else if (key == "overlap_rule") cfg.filter.overlap = parse_overlap_rule(value.get<std::string>());
      else if (key == "min_overlap_ratio") cfg.filter.min_overlap_ratio = value.get<double>();
      else if (key == "small_object_filter") cfg.filter.small_object_filter = value.get<bool>();
      else if (key == "small_object_ratio") cfg.filter.min_height_ratio = value.get<double>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "epoch") cfg.epoch = value.get<std::uint64_t>();
      else if (key == "variants_per_sample") cfg.variants_per_sample = value.get<int>();
      else throw Error(Errc::invalid_argument, "unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("bad config value: ") + e.what());
  }
  validate(cfg);
}

inline void apply_config_file(AugmentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::invalid_argument, "config '" + path + "' is not valid JSON: " + e.what());
  }
  apply_config_json(cfg, j);
}

// ---------------------------------------------------------------------------
// In-memory augmentation
// ---------------------------------------------------------------------------

struct AugmentedSample {
  ImageBuffer image;
  ValidityMask valid;
  std::optional<ImageBuffer> mask;
  Sample sample;
  std::vector<Removal> removed;
  TransformRecord record;
};

/// Augments one sample. `sample` supplies intrinsics, extrinsics and
/// objects; its width/height must match `image`.
inline AugmentedSample augment_in_memory(const ImageBuffer& image, const Sample& sample, const AugmentConfig& cfg,
                                         std::uint64_t sample_index, std::uint64_t variant_index,
                                         const ImageBuffer* mask = nullptr, int warp_threads = 1) {
  validate(cfg);
  if (image.width() != sample.width || image.height() != sample.height) {
    throw Error(Errc::data_error, "image is " + std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                                      " but the sample declares " + std::to_string(sample.width) + "x" +
                                      std::to_string(sample.height));
  }
  if (mask && (mask->width() != image.width() || mask->height() != image.height())) {
    throw Error(Errc::data_error, "mask size does not match the image");
  }

  const Sample source = cfg.filter_before ? filter_objects(sample, cfg.filter).sample : sample;
  TransformRecord rec = with_canvas(sample_transform(cfg, sample_index, variant_index), sample.intrinsics,
                                    sample.width, sample.height);
  TransformedSample labels = transform_sample(source, rec, cfg.keep_chirality, cfg.filter);

  WarpOptions opt;
  opt.interpolation = Interpolation::bilinear;
  opt.threads = warp_threads;
  WarpResult warped = warp_image(image, labels.homography, rec.canvas, opt);

  AugmentedSample out{std::move(warped.image), std::move(warped.valid), std::nullopt, std::move(labels.sample),
                      std::move(labels.removed), std::move(rec)};
  if (mask) out.mask = warp_mask(*mask, labels.homography, out.record.canvas, opt).image;
  return out;
}

// ---------------------------------------------------------------------------
// augment
// ---------------------------------------------------------------------------

struct AugmentJob {
  std::string dataset;
  std::string images_dir;
  std::optional<std::string> masks_dir;
  std::string out_dir;
  AugmentConfig cfg;
  int jobs = 1;
  int warp_threads = 1;
  bool quiet = false;
};

struct AugmentSummary {
  std::size_t samples = 0;
  std::size_t outputs = 0;
  std::size_t failed_samples = 0;
  std::size_t objects_in = 0;
  std::size_t objects_kept = 0;
  std::map<std::string, std::size_t> filtered;  // by reason
  std::size_t gravity_warnings = 0;
  std::vector<std::string> errors;

  /// Exit status: nonzero only when every sample failed.
  bool all_failed() const { return samples > 0 && failed_samples == samples; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["samples"] = samples;
    j["outputs"] = outputs;
    j["failed_samples"] = failed_samples;
    j["objects_in"] = objects_in;
    j["objects_kept"] = objects_kept;
    j["objects_filtered"] = filtered;
    j["gravity_warnings"] = gravity_warnings;
    j["errors"] = errors;
    return j;
  }
};

inline std::string output_image_name(std::size_t sample_index, int variant, const std::string& image) {
  char prefix[32];
  std::snprintf(prefix, sizeof(prefix), "%06zu_", sample_index);
  return std::string(prefix) + std::filesystem::path(image).stem().string() + "_v" + std::to_string(variant) + ".png";
}

/// Calls fn(i) for i in [0, n) on `jobs` threads.
template <typename Fn>
void for_each_index(std::size_t n, int jobs, Fn&& fn) {
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
}

/// Reads a JSONL dataset, augments every (sample, variant) pair and writes
///   out_dir/samples.jsonl     augmented labels, input order
///   out_dir/transforms.jsonl  one TransformRecord per output line
///   out_dir/images/*.png      warped images (and masks/ when masks_dir is set)
///   out_dir/summary.json
/// Failing samples are logged and skipped.
inline AugmentSummary run_augment(const AugmentJob& job) {
  namespace fs = std::filesystem;
  validate(job.cfg);
  const auto lines = read_lines(job.dataset);
  const int variants = job.cfg.variants_per_sample;

  fs::create_directories(fs::path(job.out_dir) / "images");
  if (job.masks_dir) fs::create_directories(fs::path(job.out_dir) / "masks");

  struct Output {
    std::string sample_line;
    std::string record_line;
    std::size_t objects_in = 0;
    std::size_t kept = 0;
    std::vector<FilterReason> removed;
    std::size_t gravity_warnings = 0;
  };
  struct SampleResult {
    std::vector<Output> outputs;
    std::optional<std::string> error;
  };
  std::vector<SampleResult> results(lines.size());

  for_each_index(lines.size(), job.jobs, [&](std::size_t i) {
    SampleResult& res = results[i];
    try {
      const Sample sample = parse_sample(lines[i].text);
      const ImageBuffer image = read_png((fs::path(job.images_dir) / sample.image).string());
      std::optional<ImageBuffer> mask;
      if (job.masks_dir) {
        const fs::path mask_path = fs::path(*job.masks_dir) / sample.image;
        if (fs::exists(mask_path)) mask = read_png(mask_path.string());
      }
      for (int v = 0; v < variants; ++v) {
        AugmentedSample aug = augment_in_memory(image, sample, job.cfg, i, v, mask ? &*mask : nullptr,
                                                job.warp_threads);
        const std::string name = output_image_name(i, v, sample.image);
        write_png((fs::path(job.out_dir) / "images" / name).string(), aug.image);
        if (aug.mask) write_png((fs::path(job.out_dir) / "masks" / name).string(), *aug.mask);

        aug.sample.image = "images/" + name;
        Output out;
        out.sample_line = emit_sample(aug.sample);
        out.record_line = emit_record(aug.record, i, v, aug.sample.image, aug.sample.objects.size(), aug.removed.size());
        out.objects_in = sample.objects.size();
        out.kept = aug.sample.objects.size();
        for (const auto& r : aug.removed) out.removed.push_back(r.reason);
        out.gravity_warnings = gravity_warnings(aug.sample).size();
        res.outputs.push_back(std::move(out));
      }
    } catch (const std::exception& e) {
      res.outputs.clear();
      res.error = "line " + std::to_string(lines[i].line_number) + ": " + e.what();
    }
  });

  AugmentSummary summary;
  summary.samples = lines.size();
  std::ofstream samples_out(fs::path(job.out_dir) / "samples.jsonl", std::ios::binary);
  std::ofstream records_out(fs::path(job.out_dir) / "transforms.jsonl", std::ios::binary);
  if (!samples_out || !records_out) throw Error(Errc::io_error, "cannot write outputs under '" + job.out_dir + "'");
  for (const auto& res : results) {
    if (res.error) {
      ++summary.failed_samples;
      summary.errors.push_back(*res.error);
      if (!job.quiet) std::cerr << "camaug: skipping sample, " << *res.error << '\n';
      continue;
    }
    for (const auto& out : res.outputs) {
      samples_out << out.sample_line << '\n';
      records_out << out.record_line << '\n';
      ++summary.outputs;
      summary.objects_in += out.objects_in;
      summary.objects_kept += out.kept;
      summary.gravity_warnings += out.gravity_warnings;
      for (auto r : out.removed) ++summary.filtered[std::string(to_string(r))];
    }
  }
  std::ofstream(fs::path(job.out_dir) / "summary.json") << summary.to_json().dump(2) << '\n';
  return summary;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyJob {
  std::string dataset;
  std::optional<std::string> images_dir;
  AugmentConfig cfg;
  std::size_t trials_per_sample = 10000;
  double pixel_tol = 1e-6;
  double corner_tol = 1e-12;  // relative to the corner magnitude
  int jobs = 1;
};

struct VerifyReport {
  std::size_t samples = 0;
  std::size_t transforms_checked = 0;
  std::size_t points_checked = 0;
  double max_pixel_residual = 0.0;
  double max_corner_residual = 0.0;
  std::size_t so3_violations = 0;
  std::size_t pixel_violations = 0;
  std::size_t corner_violations = 0;
  std::size_t objects_kept = 0;
  std::map<std::string, std::size_t> filtered;
  std::vector<std::string> data_errors;

  bool violations() const { return so3_violations + pixel_violations + corner_violations > 0; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["samples"] = samples;
    j["transforms_checked"] = transforms_checked;
    j["points_checked"] = points_checked;
    j["max_pixel_residual"] = max_pixel_residual;
    j["max_corner_residual"] = max_corner_residual;
    j["so3_violations"] = so3_violations;
    j["pixel_violations"] = pixel_violations;
    j["corner_violations"] = corner_violations;
    j["objects_kept"] = objects_kept;
    j["objects_filtered"] = filtered;
    j["data_errors"] = data_errors;
    j["pass"] = !violations();
    return j;
  }
};

/// Replays the sampler over a dataset and checks every transform with the
/// oracles: projective residual, corner residual, and orthogonality of the
/// output rotations (proper whenever chirality is kept or nothing is mirrored).
inline VerifyReport run_verify(const VerifyJob& job) {
  namespace fs = std::filesystem;
  validate(job.cfg);
  const auto lines = read_lines(job.dataset);

  std::vector<VerifyReport> partial(lines.size());
  for_each_index(lines.size(), job.jobs, [&](std::size_t i) {
    VerifyReport& rep = partial[i];
    rep.samples = 1;
    try {
      const Sample sample = parse_sample(lines[i].text);
      if (job.images_dir) {
        const ImageBuffer img = read_png((fs::path(*job.images_dir) / sample.image).string());
        if (img.width() != sample.width || img.height() != sample.height) {
          throw Error(Errc::data_error, "image size differs from the declared width/height");
        }
      }
      for (int v = 0; v < job.cfg.variants_per_sample; ++v) {
        const TransformRecord rec = with_canvas(sample_transform(job.cfg, i, v), sample.intrinsics, sample.width,
                                                sample.height);
        ++rep.transforms_checked;

        const auto proj = oracle::check_homography(homography_for(rec, sample.intrinsics), sample.intrinsics,
                                                   sample.width, sample.height, rec.op.matrix(), rec.canvas.k,
                                                   rec.canvas.width, rec.canvas.height, job.trials_per_sample,
                                                   job.cfg.seed ^ splitmix64(i * 1315423911ULL + v));
        rep.points_checked += proj.accepted;
        rep.max_pixel_residual = std::max(rep.max_pixel_residual, proj.max_residual_px);
        if (!(proj.max_residual_px <= job.pixel_tol)) ++rep.pixel_violations;

        for (const auto& obj : sample.objects) {
          const auto cub = oracle::check_cuboid_consistency(obj.pose, rec.op, job.cfg.keep_chirality);
          const double magnitude = 1.0 + obj.pose.center.norm() +
                                   Vec3(obj.pose.size.width, obj.pose.size.height, obj.pose.size.length).norm();
          const double rel = cub.max_deviation / magnitude;
          rep.max_corner_residual = std::max(rep.max_corner_residual, rel);
          if (!(rel <= job.corner_tol) || !cub.bijective) ++rep.corner_violations;
        }

        FilterConfig unfiltered;
        unfiltered.enabled = false;
        const TransformedSample moved = transform_sample(sample, rec, job.cfg.keep_chirality, unfiltered);
        const double handedness = rec.is_reflection() && !job.cfg.keep_chirality ? -1.0 : 1.0;
        for (std::size_t k = 0; k < sample.objects.size(); ++k) {
          const double expected_det = (sample.objects[k].pose.rotation.det() > 0 ? 1.0 : -1.0) * handedness;
          const auto& r = moved.sample.objects[k].pose.rotation;
          if (orthogonality_error(r.matrix()) > kOrthogonalityTol ||
              std::abs(r.det() - expected_det) > kOrthogonalityTol) {
            ++rep.so3_violations;
          }
        }
        if (orthogonality_error(moved.sample.extrinsics.rotation.matrix()) > kOrthogonalityTol) ++rep.so3_violations;

        const FilterOutcome kept = filter_objects(moved.sample, job.cfg.filter);
        rep.objects_kept += kept.sample.objects.size();
        for (const auto& r : kept.removed) ++rep.filtered[std::string(to_string(r.reason))];
      }
    } catch (const std::exception& e) {
      rep.data_errors.push_back("line " + std::to_string(lines[i].line_number) + ": " + e.what());
    }
  });

  VerifyReport total;
  for (const auto& p : partial) {
    total.samples += p.samples;
    total.transforms_checked += p.transforms_checked;
    total.points_checked += p.points_checked;
    total.max_pixel_residual = std::max(total.max_pixel_residual, p.max_pixel_residual);
    total.max_corner_residual = std::max(total.max_corner_residual, p.max_corner_residual);
    total.so3_violations += p.so3_violations;
    total.pixel_violations += p.pixel_violations;
    total.corner_violations += p.corner_violations;
    total.objects_kept += p.objects_kept;
    for (const auto& [k, n] : p.filtered) total.filtered[k] += n;
    total.data_errors.insert(total.data_errors.end(), p.data_errors.begin(), p.data_errors.end());
  }
  return total;
}

// ---------------------------------------------------------------------------
// render
// ---------------------------------------------------------------------------

struct RenderJob {
  std::string dataset;
  std::size_t index = 0;
  std::string images_dir;
  std::string out_png;
  FilterConfig filter;
};

inline nlohmann::json legend_json(const std::vector<RenderedObject>& legend) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& o : legend) {
    nlohmann::json e;
    e["id"] = o.id;
    e["category"] = o.category;
    e["status"] = std::string(to_string(o.status));
    e["reason"] = o.reason ? nlohmann::json(std::string(to_string(*o.reason))) : nlohmann::json(nullptr);
    e["edges_drawn"] = o.edges_drawn;
    j.push_back(e);
  }
  return j;
}

/// Overlays the projected wireframes of one dataset line on its image.
inline std::vector<RenderedObject> run_render(const RenderJob& job) {
  namespace fs = std::filesystem;
  const auto lines = read_lines(job.dataset);
  if (job.index >= lines.size()) {
    throw Error(Errc::invalid_argument, "sample index " + std::to_string(job.index) + " out of range (" +
                                            std::to_string(lines.size()) + " samples)");
  }
  const Sample sample = parse_sample(lines[job.index].text);
  ImageBuffer image = read_png((fs::path(job.images_dir) / sample.image).string());
  if (image.channels() < 3) {
    ImageBuffer rgb(image.width(), image.height(), 3);
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        std::uint8_t* out = rgb.pixel(x, y);
        out[0] = out[1] = out[2] = image.pixel(x, y)[0];
      }
    }
    image = std::move(rgb);
  }
  auto legend = render_wireframes(image, sample, job.filter);
  write_png(job.out_png, image);
  return legend;
}

// ---------------------------------------------------------------------------
// selfcheck
// ---------------------------------------------------------------------------

struct SelfcheckOptions {
  std::uint64_t seed = 42;
  std::size_t operators = 100;
  std::size_t trials = 10000;
  std::size_t poses = 1000;
  std::size_t affine_matrices = 100;
  int threads = 1;
};

struct SelfcheckReport {
  double projective_max_residual = 0.0;
  double canary_residual = 0.0;
  double cuboid_max_deviation = 0.0;
  std::size_t cuboid_failures = 0;
  std::size_t affine_disagreements = 0;
  double canvas_max_excess = 0.0;
  bool pass = false;

  nlohmann::json to_json(const SelfcheckOptions& opt) const {
    nlohmann::json j;
    j["seed"] = opt.seed;
    j["projective"] = {{"operators", opt.operators}, {"trials_per_operator", opt.trials},
                       {"max_residual_px", projective_max_residual}, {"tolerance_px", 1e-6}};
    j["canary"] = {{"perturbed_residual_px", canary_residual}, {"detected", canary_residual > 0.1}};
    j["cuboid"] = {{"poses", opt.poses}, {"max_deviation", cuboid_max_deviation}, {"failures", cuboid_failures}};
    j["affine"] = {{"matrices", opt.affine_matrices}, {"disagreements", affine_disagreements}};
    j["canvas"] = {{"max_excess_px", canvas_max_excess}};
    j["pass"] = pass;
    return j;
  }
};

/// Random operator within the default ranges, mirrored half the time.
inline Orthogonal3 random_augment_operator(const CounterRng& rng, double yaw = 10.0, double pitch = 5.0,
                                           double roll = 5.0) {
  const RotationSO3 r = rotation_from_euler({rng.symmetric(10, yaw), rng.symmetric(11, pitch), rng.symmetric(12, roll)});
  if (rng.uniform(13) < 0.5) return Reflection::mirror(Axis::x) * r;
  return r;
}

/// Runs every oracle on synthetic data.
inline SelfcheckReport run_selfcheck(const SelfcheckOptions& opt) {
  SelfcheckReport rep;
  const Intrinsics k{500.0, 500.0, 320.0, 240.0};
  const int w = 640, h = 480;

  for (std::size_t i = 0; i < opt.operators; ++i) {
    const CounterRng rng(opt.seed, 10, i, 0);
    const Orthogonal3 op = random_augment_operator(rng);
    const auto res = oracle::check_projective_consistency(k, w, h, op, opt.trials, opt.seed + i,
                                                          CanvasMode::centered, opt.threads);
    rep.projective_max_residual = std::max(rep.projective_max_residual, res.max_residual_px);
    rep.canvas_max_excess = std::max(rep.canvas_max_excess, oracle::check_canvas(k, w, h, op, 1000, opt.seed + i).max_excess_px);
  }

  {
    const Orthogonal3 op = rotation_from_euler({7.0, -3.0, 4.0});
    const CanvasSpec canvas = realign_principal_point(k, w, h, op);
    Mat3 corrupted = pure_rotation_homography(canvas.k, op, k);
    corrupted(0, 0) += 1e-3;
    rep.canary_residual = oracle::check_homography(corrupted, k, w, h, op.matrix(), canvas.k, canvas.width,
                                                   canvas.height, opt.trials, opt.seed, opt.threads)
                              .max_residual_px;
  }

  for (std::size_t i = 0; i < opt.poses; ++i) {
    const CounterRng rng(opt.seed, 11, i, 0);
    CuboidPose pose;
    pose.rotation = Orthogonal3(oracle::random_rotation(rng, 20));
    pose.center = Vec3(rng.symmetric(0, 3.0), rng.symmetric(1, 2.0), 0.5 + rng.uniform(2) * 9.5);
    pose.size = {0.1 + 2.0 * rng.uniform(3), 0.1 + 2.0 * rng.uniform(4), 0.1 + 2.0 * rng.uniform(5)};
    const Orthogonal3 op = random_augment_operator(rng);
    for (bool kc : {false, true}) {
      const auto res = oracle::check_cuboid_consistency(pose, op, kc);
      rep.cuboid_max_deviation = std::max(rep.cuboid_max_deviation, res.max_deviation);
      if (!res.bijective || res.max_deviation > 1e-12 * (1.0 + pose.center.norm())) ++rep.cuboid_failures;
    }
  }

  for (std::size_t i = 0; i < opt.affine_matrices; ++i) {
    const CounterRng rng(opt.seed, 12, i, 0);
    Mat3 a;
    if (i % 2 == 0) {
      a = (0.2 + 3.0 * rng.uniform(0)) * oracle::random_orthogonal(rng, 30);
    } else {
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) a(r, c) = rng.symmetric(1 + 3 * r + c, 1.0);
      }
      if (std::abs(a.determinant()) < 1e-3) a += Mat3::Identity();
    }
    if (!oracle::brute_force_affine_check(a, 1000, opt.seed + i).agree) ++rep.affine_disagreements;
  }

  rep.pass = rep.projective_max_residual <= 1e-6 && rep.canary_residual > 0.1 && rep.cuboid_failures == 0 &&
             rep.affine_disagreements == 0 && rep.canvas_max_excess <= 0.5;
  return rep;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchRow {
  int width = 0;
  int height = 0;
  Interpolation interpolation = Interpolation::bilinear;
  int threads = 1;
  double megapixels_per_second = 0.0;
};

/// Smooth synthetic RGB test pattern.
inline ImageBuffer synthetic_image(int width, int height, int channels = 3) {
  ImageBuffer img(width, height, channels);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint8_t* p = img.pixel(x, y);
      for (int c = 0; c < channels; ++c) {
        const double v = 127.5 + 60.0 * std::sin(0.031 * x + 1.3 * c) + 60.0 * std::cos(0.023 * y - 0.7 * c);
        p[c] = detail::round_to_u8(std::clamp(v, 0.0, 255.0));
      }
    }
  }
  return img;
}

/// Times warp_image for a yaw/pitch/roll = (10, 5, 5) operator; best of `repeats`.
inline BenchRow bench_warp(int width, int height, Interpolation interp, int threads, int repeats = 3) {
  const ImageBuffer src = synthetic_image(width, height);
  const Intrinsics k{0.8 * width, 0.8 * width, width / 2.0, height / 2.0};
  const RotationSO3 op = rotation_from_euler({10.0, 5.0, 5.0});
  const CanvasSpec canvas = realign_principal_point(k, width, height, op);
  const Mat3 hom = pure_rotation_homography(canvas.k, op, k);
  WarpOptions opt;
  opt.interpolation = interp;
  opt.threads = threads;

  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, repeats); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    const WarpResult out = warp_image(src, hom, canvas, opt);
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  const double mp = static_cast<double>(canvas.width) * canvas.height / 1e6;
  return {width, height, interp, threads, mp / best};
}

}  // namespace camaug
