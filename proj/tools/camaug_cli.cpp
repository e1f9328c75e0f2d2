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


// Command-line front end: augment, verify, render, selfcheck, bench.
// Exit codes: 0 ok, 1 usage, 2 data error, 3 verification failure.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "camaug/camaug.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerify = 3;

struct ConfigFlags {
  camaug::AugmentConfig cfg;
  std::string flip_axis = "x";
  std::string overlap_rule = "center";
  std::string config_file;
};

void add_config_flags(CLI::App& app, ConfigFlags& f) {
  auto& c = f.cfg;
  app.add_option("--p-rotation", c.p_rotation, "Probability of a random rotation")->capture_default_str();
  app.add_option("--yaw-range", c.yaw_range, "Yaw half-range in degrees")->capture_default_str();
  app.add_option("--pitch-range", c.pitch_range, "Pitch half-range in degrees")->capture_default_str();
  app.add_option("--roll-range", c.roll_range, "Roll half-range in degrees")->capture_default_str();
  app.add_option("--p-flip", c.p_flip, "Probability of a mirror")->capture_default_str();
  app.add_option("--flip-axis", f.flip_axis, "Mirror axis")->check(CLI::IsMember({"x", "y", "z"}))->capture_default_str();
  app.add_flag("--keep-chirality,!--no-keep-chirality", c.keep_chirality, "Keep box rotations proper under mirrors");
  app.add_flag("--center-realign,!--no-center-realign", c.center_realign, "Center the principal point on the canvas");
  app.add_flag("--filter,!--no-filter", c.filter.enabled, "Drop invalid, outside and small objects");
  app.add_flag("--filter-before", c.filter_before, "Also filter the source labels before transforming");
  app.add_option("--min-depth", c.filter.min_depth, "Minimum center depth")->capture_default_str();
  app.add_option("--overlap-rule", f.overlap_rule, "center | corners")
      ->check(CLI::IsMember({"center", "corners"}))
      ->capture_default_str();
  app.add_option("--min-overlap-ratio", c.filter.min_overlap_ratio, "Corner-box overlap needed with --overlap-rule corners")
      ->capture_default_str();
  app.add_flag("--small-object-filter,!--no-small-object-filter", c.filter.small_object_filter,
               "Drop objects shorter than --small-object-ratio of the canvas height");
  app.add_option("--small-object-ratio", c.filter.min_height_ratio, "Minimum projected height ratio")
      ->capture_default_str();
  app.add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app.add_option("--epoch", c.epoch, "Epoch index mixed into the RNG key")->capture_default_str();
  app.add_option("--variants-per-sample", c.variants_per_sample, "Outputs per input sample")->capture_default_str();
  app.add_option("--config", f.config_file, "JSON file whose keys override the flags");
}

camaug::AugmentConfig resolve(ConfigFlags& f) {
  f.cfg.flip_axis = camaug::parse_axis(f.flip_axis);
  f.cfg.filter.overlap = camaug::parse_overlap_rule(f.overlap_rule);
  if (!f.config_file.empty()) camaug::apply_config_file(f.cfg, f.config_file);
  camaug::validate(f.cfg);
  return f.cfg;
}

camaug::Interpolation parse_interp(const std::string& s) {
  return s == "nearest" ? camaug::Interpolation::nearest : camaug::Interpolation::bilinear;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry-consistent camera rotation and mirror augmentation"};
  app.require_subcommand(1);

  // augment
  auto* augment = app.add_subcommand("augment", "Augment a JSONL dataset and its images");
  camaug::AugmentJob aug_job;
  ConfigFlags aug_flags;
  std::string aug_masks;
  augment->add_option("--dataset", aug_job.dataset, "Input JSONL")->required();
  augment->add_option("--images-dir", aug_job.images_dir, "Directory the image fields are relative to")->required();
  augment->add_option("--masks-dir", aug_masks, "Optional single-channel masks, same file names as the images");
  augment->add_option("--out", aug_job.out_dir, "Output directory")->required();
  augment->add_option("--jobs", aug_job.jobs, "Sample worker threads")->capture_default_str();
  augment->add_option("--warp-threads", aug_job.warp_threads, "Threads per warp")->capture_default_str();
  augment->add_flag("--quiet", aug_job.quiet, "Do not log skipped samples");
  add_config_flags(*augment, aug_flags);

  // verify
  auto* verify = app.add_subcommand("verify", "Check every sampled transform against the oracles");
  camaug::VerifyJob ver_job;
  ConfigFlags ver_flags;
  std::string ver_images;
  verify->add_option("--dataset", ver_job.dataset, "Input JSONL")->required();
  verify->add_option("--images-dir", ver_images, "Also check image sizes against the labels");
  verify->add_option("--trials", ver_job.trials_per_sample, "Projective trials per transform")->capture_default_str();
  verify->add_option("--pixel-tol", ver_job.pixel_tol, "Pixel residual tolerance")->capture_default_str();
  verify->add_option("--corner-tol", ver_job.corner_tol, "Relative corner tolerance")->capture_default_str();
  verify->add_option("--jobs", ver_job.jobs, "Worker threads")->capture_default_str();
  add_config_flags(*verify, ver_flags);

  // render
  auto* render = app.add_subcommand("render", "Draw projected cuboids onto a sample image");
  camaug::RenderJob ren_job;
  render->add_option("--dataset", ren_job.dataset, "Input JSONL")->required();
  render->add_option("--index", ren_job.index, "Sample index (non-empty lines)")->capture_default_str();
  render->add_option("--images-dir", ren_job.images_dir, "Directory the image fields are relative to")->required();
  render->add_option("--out", ren_job.out_png, "Output PNG")->required();
  render->add_flag("--filter,!--no-filter", ren_job.filter.enabled, "Color objects the filter would drop");

  // selfcheck
  auto* selfcheck = app.add_subcommand("selfcheck", "Run the oracles on synthetic data");
  camaug::SelfcheckOptions sc;
  selfcheck->add_option("--seed", sc.seed, "RNG seed")->capture_default_str();
  selfcheck->add_option("--operators", sc.operators, "Random operators")->capture_default_str();
  selfcheck->add_option("--trials", sc.trials, "Points per operator")->capture_default_str();
  selfcheck->add_option("--poses", sc.poses, "Random cuboid poses")->capture_default_str();
  selfcheck->add_option("--threads", sc.threads, "Oracle threads")->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Warp throughput as CSV");
  int bench_w = 1920, bench_h = 1080, bench_repeats = 3;
  std::vector<std::string> bench_interp = {"nearest", "bilinear"};
  std::vector<int> bench_threads = {1, 2, 4, 8};
  bench->add_option("--width", bench_w, "Source width")->capture_default_str();
  bench->add_option("--height", bench_h, "Source height")->capture_default_str();
  bench->add_option("--interp", bench_interp, "Interpolation modes")->check(CLI::IsMember({"nearest", "bilinear"}));
  bench->add_option("--threads", bench_threads, "Thread counts")->check(CLI::PositiveNumber);
  bench->add_option("--repeats", bench_repeats, "Runs per row, best is kept")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*augment) {
      aug_job.cfg = resolve(aug_flags);
      if (!aug_masks.empty()) aug_job.masks_dir = aug_masks;
      const auto summary = camaug::run_augment(aug_job);
      std::cout << summary.to_json().dump(2) << '\n';
      return summary.all_failed() ? kExitData : kExitOk;
    }
    if (*verify) {
      ver_job.cfg = resolve(ver_flags);
      if (!ver_images.empty()) ver_job.images_dir = ver_images;
      const auto report = camaug::run_verify(ver_job);
      std::cout << report.to_json().dump(2) << '\n';
      if (report.violations()) return kExitVerify;
      return report.data_errors.empty() ? kExitOk : kExitData;
    }
    if (*render) {
      const auto legend = camaug::run_render(ren_job);
      std::cout << camaug::legend_json(legend).dump(2) << '\n';
      return kExitOk;
    }
    if (*selfcheck) {
      const auto report = camaug::run_selfcheck(sc);
      std::cout << report.to_json(sc).dump(2) << '\n';
      return report.pass ? kExitOk : kExitVerify;
    }
    if (*bench) {
      std::cout << "width,height,interp,threads,megapixels_per_second\n";
      for (const auto& interp : bench_interp) {
        for (int t : bench_threads) {
          const auto row = camaug::bench_warp(bench_w, bench_h, parse_interp(interp), t, bench_repeats);
          std::cout << row.width << ',' << row.height << ',' << camaug::to_string(row.interpolation) << ','
                    << row.threads << ',' << row.megapixels_per_second << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const camaug::Error& e) {
    std::cerr << "camaug: " << e.what() << '\n';
    return e.code() == camaug::Errc::invalid_argument ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "camaug: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
