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

#include <stdexcept>
#include <string>
#include <string_view>

namespace camaug {

enum class Errc {
  invalid_argument,
  behind_camera,
  degenerate_depth,
  invalid_intrinsics,
  excessive_rotation,
  invalid_homography,
  canvas_too_large,
  data_error,
  io_error,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::behind_camera: return "behind-camera";
    case Errc::degenerate_depth: return "degenerate-depth";
    case Errc::invalid_intrinsics: return "invalid-intrinsics";
    case Errc::excessive_rotation: return "excessive-rotation";
    case Errc::invalid_homography: return "invalid-homography";
    case Errc::canvas_too_large: return "canvas-too-large";
    case Errc::data_error: return "data-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

/// Exception carrying a machine-readable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace camaug
