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

#include <png.h>

#include <cstring>
#include <string>
#include <vector>

#include "camaug/image.hpp"

namespace camaug {

namespace detail {

struct PngImage {
  png_image img;
  PngImage() {
    std::memset(&img, 0, sizeof(img));
    img.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&img); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

inline png_uint_32 png_format_for(int channels) {
  switch (channels) {
    case 1: return PNG_FORMAT_GRAY;
    case 2: return PNG_FORMAT_GA;
    case 3: return PNG_FORMAT_RGB;
    default: return PNG_FORMAT_RGBA;
  }
}

}  // namespace detail

/// Reads an 8-bit PNG. Palette and 16-bit inputs are converted to 8-bit
/// gray/GA/RGB/RGBA depending on the color and alpha flags of the file.
inline ImageBuffer read_png(const std::string& path) {
  detail::PngImage png;
  if (!png_image_begin_read_from_file(&png.img, path.c_str())) {
    throw Error(Errc::io_error, "cannot read PNG '" + path + "': " + png.img.message);
  }
  int channels = (png.img.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
  if (png.img.format & PNG_FORMAT_FLAG_ALPHA) ++channels;
  png.img.format = detail::png_format_for(channels);

  const int width = static_cast<int>(png.img.width);
  const int height = static_cast<int>(png.img.height);
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(png.img));
  if (!png_image_finish_read(&png.img, nullptr, data.data(), 0, nullptr)) {
    throw Error(Errc::io_error, "cannot decode PNG '" + path + "': " + png.img.message);
  }
  return ImageBuffer(width, height, channels, std::move(data));
}

inline void write_png(const std::string& path, const ImageBuffer& image) {
  detail::PngImage png;
  png.img.width = static_cast<png_uint_32>(image.width());
  png.img.height = static_cast<png_uint_32>(image.height());
  png.img.format = detail::png_format_for(image.channels());
  if (!png_image_write_to_file(&png.img, path.c_str(), 0, image.data().data(), 0, nullptr)) {
    throw Error(Errc::io_error, "cannot write PNG '" + path + "': " + png.img.message);
  }
}

}  // namespace camaug
