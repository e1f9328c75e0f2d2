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
 * @file dataset.hpp
 * @brief JSONL sample format.
 *
 * One sample per line:
 *
 *   {"image": str, "width": int, "height": int,
 *    "K": [[fx,0,cx],[0,fy,cy],[0,0,1]],
 *    "extrinsics": {"R": [[3x3]], "t": [3]},          (optional, identity default)
 *    "objects": [{"id": str, "category": str, "R": [[3x3]], "t": [3], "size": [W,H,L]}]}
 *
 * Matrices are row-major. Numbers are written with 17 significant digits so
 * every double survives a write/read cycle bit for bit.
 */

#pragma once

#include <Eigen/SVD>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "camaug/labels.hpp"

namespace camaug {

namespace json_out {

inline std::string num(double v) {
  if (!std::isfinite(v)) throw Error(Errc::data_error, "cannot serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string str(const std::string& s) { return nlohmann::json(s).dump(); }

inline std::string vec(const Vec3& v) { return "[" + num(v.x()) + "," + num(v.y()) + "," + num(v.z()) + "]"; }

inline std::string mat(const Mat3& m) {
  std::string out = "[";
  for (int r = 0; r < 3; ++r) {
    if (r) out += ",";
    out += "[" + num(m(r, 0)) + "," + num(m(r, 1)) + "," + num(m(r, 2)) + "]";
  }
  return out + "]";
}

}  // namespace json_out

/// Rotations read from disk may carry float32-level noise. Matrices within
/// this distance of O(3) are snapped to the nearest orthogonal matrix.
inline constexpr double kRotationRepairTol = 1e-3;

namespace detail {

inline double json_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw Error(Errc::data_error, std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(Errc::data_error, std::string(what) + " must be finite");
  return v;
}

inline Vec3 json_vec3(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw Error(Errc::data_error, std::string(what) + " must be an array of 3 numbers");
  return {json_number(j[0], what), json_number(j[1], what), json_number(j[2], what)};
}

inline Mat3 json_mat3(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw Error(Errc::data_error, std::string(what) + " must be a 3x3 array");
  Mat3 m;
  for (int r = 0; r < 3; ++r) m.row(r) = json_vec3(j[r], what).transpose();
  return m;
}

inline Orthogonal3 json_orthogonal(const nlohmann::json& j, const char* what) {
  const Mat3 m = json_mat3(j, what);
  const double err = orthogonality_error(m);
  if (err <= kOrthogonalityTol) return Orthogonal3(m);
  if (err > kRotationRepairTol) {
    throw Error(Errc::data_error, std::string(what) + " is not orthogonal (error " + fmt_double(err) + ")");
  }
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return Orthogonal3(svd.matrixU() * svd.matrixV().transpose());
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::data_error, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string json_string(const nlohmann::json& j, const char* what) {
  if (!j.is_string()) throw Error(Errc::data_error, std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline int json_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(Errc::data_error, std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace detail

inline Sample parse_sample(const std::string& line) {
  using namespace detail;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::data_error, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::data_error, "sample must be a JSON object");

  Sample s;
  s.image = json_string(field(j, "image"), "image");
  s.width = json_int(field(j, "width"), "width");
  s.height = json_int(field(j, "height"), "height");
  if (s.width <= 0 || s.height <= 0) throw Error(Errc::data_error, "width and height must be positive");

  const Mat3 k = json_mat3(field(j, "K"), "K");
  if (k(0, 1) != 0.0 || k(1, 0) != 0.0 || k(2, 0) != 0.0 || k(2, 1) != 0.0 || k(2, 2) != 1.0) {
    throw Error(Errc::data_error, "K must be [[fx,0,cx],[0,fy,cy],[0,0,1]]");
  }
  s.intrinsics = {k(0, 0), k(1, 1), k(0, 2), k(1, 2)};
  try {
    validate(s.intrinsics);
  } catch (const Error& e) {
    throw Error(Errc::data_error, e.what());
  }

  if (auto it = j.find("extrinsics"); it != j.end() && !it->is_null()) {
    s.extrinsics.rotation = json_orthogonal(field(*it, "R"), "extrinsics.R");
    s.extrinsics.translation = json_vec3(field(*it, "t"), "extrinsics.t");
  }

  const auto& objects = field(j, "objects");
  if (!objects.is_array()) throw Error(Errc::data_error, "objects must be an array");
  for (const auto& o : objects) {
    ObjectAnnotation obj;
    obj.id = json_string(field(o, "id"), "object id");
    obj.category = json_string(field(o, "category"), "object category");
    if (obj.category.empty()) throw Error(Errc::data_error, "object '" + obj.id + "' has an empty category");
    obj.pose.rotation = json_orthogonal(field(o, "R"), "object R");
    obj.pose.center = json_vec3(field(o, "t"), "object t");
    const Vec3 size = json_vec3(field(o, "size"), "object size");
    if (!(size.x() > 0 && size.y() > 0 && size.z() > 0)) {
      throw Error(Errc::data_error, "object '" + obj.id + "' size must be positive");
    }
    obj.pose.size = {size.x(), size.y(), size.z()};
    s.objects.push_back(std::move(obj));
  }
  return s;
}

inline std::string emit_sample(const Sample& s) {
  using namespace json_out;
  std::string out = "{\"image\":" + str(s.image) + ",\"width\":" + std::to_string(s.width) +
                    ",\"height\":" + std::to_string(s.height) + ",\"K\":" + mat(s.intrinsics.matrix());
  if (!(s.extrinsics == Extrinsics{})) {
    out += ",\"extrinsics\":{\"R\":" + mat(s.extrinsics.rotation.matrix()) + ",\"t\":" + vec(s.extrinsics.translation) + "}";
  }
  out += ",\"objects\":[";
  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    const auto& o = s.objects[i];
    if (i) out += ",";
    out += "{\"id\":" + str(o.id) + ",\"category\":" + str(o.category) + ",\"R\":" + mat(o.pose.rotation.matrix()) +
           ",\"t\":" + vec(o.pose.center) + ",\"size\":" +
           vec(Vec3(o.pose.size.width, o.pose.size.height, o.pose.size.length)) + "}";
  }
  return out + "]}";
}

/// Sidecar line describing how an output sample was produced.
inline std::string emit_record(const TransformRecord& rec, std::size_t sample_index, int variant_index,
                               const std::string& output_image, std::size_t kept, std::size_t filtered) {
  using namespace json_out;
  std::string out = "{\"sample_index\":" + std::to_string(sample_index) +
                    ",\"variant_index\":" + std::to_string(variant_index) + ",\"image\":" + str(output_image) +
                    ",\"operator\":" + mat(rec.op.matrix()) +
                    ",\"is_reflection\":" + (rec.is_reflection() ? "true" : "false") +
                    ",\"rotated\":" + (rec.rotated ? "true" : "false") + ",\"euler\":{\"yaw\":" + num(rec.euler.yaw) +
                    ",\"pitch\":" + num(rec.euler.pitch) + ",\"roll\":" + num(rec.euler.roll) + "}" +
                    ",\"flip_axis\":" + (rec.flip_axis ? str(std::string(to_string(*rec.flip_axis))) : "null") +
                    ",\"canvas\":{\"K\":" + mat(rec.canvas.k.matrix()) + ",\"width\":" + std::to_string(rec.canvas.width) +
                    ",\"height\":" + std::to_string(rec.canvas.height) + ",\"mode\":" +
                    (rec.canvas_mode == CanvasMode::centered ? "\"centered\"" : "\"bounding_box\"") + "}" +
                    ",\"seed_path\":" + str(rec.seed_path) + ",\"objects_kept\":" + std::to_string(kept) +
                    ",\"objects_filtered\":" + std::to_string(filtered) + "}";
  return out;
}

struct DatasetLine {
  std::size_t line_number = 0;
  std::string text;
};

/// Non-empty lines of a JSONL file.
inline std::vector<DatasetLine> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  std::vector<DatasetLine> lines;
  std::string text;
  for (std::size_t n = 1; std::getline(in, text); ++n) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back({n, text});
  }
  return lines;
}

/// Parses every line; the first bad line aborts with its line number.
inline std::vector<Sample> read_dataset(const std::string& path) {
  std::vector<Sample> samples;
  for (const auto& line : read_lines(path)) {
    try {
      samples.push_back(parse_sample(line.text));
    } catch (const Error& e) {
      throw Error(Errc::data_error, path + ":" + std::to_string(line.line_number) + ": " + e.what());
    }
  }
  return samples;
}

inline void write_dataset(const std::string& path, const std::vector<Sample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
  for (const auto& s : samples) out << emit_sample(s) << '\n';
}

}  // namespace camaug
