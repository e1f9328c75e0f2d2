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


#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace camaug {
namespace {

Sample random_sample(std::uint64_t i) {
  const CounterRng rng(77, 0, i, 0);
  Sample s;
  s.image = "img_" + std::to_string(i) + ".png";
  s.width = 100 + static_cast<int>(rng.bits(0) % 1900);
  s.height = 100 + static_cast<int>(rng.bits(1) % 1900);
  s.intrinsics = {100 + 1000 * rng.uniform(2), 100 + 1000 * rng.uniform(3), rng.uniform(4) * s.width,
                  rng.uniform(5) * s.height};
  if (i % 2) {
    s.extrinsics = {Orthogonal3(oracle::random_orthogonal(rng, 6)), Vec3(rng.symmetric(20, 5), 1.0 / 3.0, -1e-300)};
  }
  for (int k = 0; k < static_cast<int>(rng.bits(30) % 5); ++k) {
    const CounterRng orng(77, 1, i, k);
    s.objects.push_back({std::to_string(k), k % 2 ? "chair \"x\"" : "table", testing::random_pose(orng)});
  }
  return s;
}

TEST(Dataset, RoundTripIsExact) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Sample s = random_sample(i);
    const std::string line = emit_sample(s);
    const Sample back = parse_sample(line);
    EXPECT_EQ(back, s);
    EXPECT_EQ(emit_sample(back), line);
  }
}

TEST(Dataset, IdentityExtrinsicsAreOmitted) {
  Sample s = testing::make_sample();
  EXPECT_EQ(emit_sample(s).find("extrinsics"), std::string::npos);
  s.extrinsics.translation = Vec3(0, 0, 1);
  EXPECT_NE(emit_sample(s).find("extrinsics"), std::string::npos);
}

TEST(Dataset, ParsesMinimalLine) {
  const Sample s = parse_sample(
      R"({"image":"a.png","width":4,"height":3,"K":[[2,0,2],[0,2,1.5],[0,0,1]],"objects":[)"
      R"({"id":"7","category":"bed","R":[[1,0,0],[0,1,0],[0,0,1]],"t":[0,0,2],"size":[1,2,3]}]})");
  EXPECT_EQ(s.image, "a.png");
  EXPECT_EQ(s.intrinsics, (Intrinsics{2, 2, 2, 1.5}));
  EXPECT_EQ(s.extrinsics, Extrinsics{});
  ASSERT_EQ(s.objects.size(), 1u);
  EXPECT_EQ(s.objects[0].pose.size, (BoxSize{1, 2, 3}));
}

TEST(Dataset, SnapsNearlyOrthogonalRotations) {
  const Sample s = parse_sample(
      R"({"image":"a.png","width":4,"height":3,"K":[[2,0,2],[0,2,1.5],[0,0,1]],"objects":[)"
      R"({"id":"7","category":"bed","R":[[1.0001,0,0],[0,1,0],[0,0,0.99995]],"t":[0,0,2],"size":[1,2,3]}]})");
  EXPECT_LE(orthogonality_error(s.objects[0].pose.rotation.matrix()), 1e-12);
}

void expect_data_error(const std::string& line) {
  try {
    parse_sample(line);
    FAIL() << "accepted: " << line;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::data_error) << e.what();
  }
}

TEST(Dataset, RejectsBadLines) {
  const std::string head = R"({"image":"a.png","width":4,"height":3,"K":[[2,0,2],[0,2,1.5],[0,0,1]],"objects":[)";
  const std::string obj = R"({"id":"1","category":"bed","R":[[1,0,0],[0,1,0],[0,0,1]],"t":[0,0,2],"size":[1,2,3]})";
  expect_data_error("{not json");
  expect_data_error("[1,2]");
  expect_data_error(R"({"width":4,"height":3,"K":[[2,0,2],[0,2,1.5],[0,0,1]],"objects":[]})");
  expect_data_error(R"({"image":"a.png","width":0,"height":3,"K":[[2,0,2],[0,2,1.5],[0,0,1]],"objects":[]})");
  expect_data_error(R"({"image":"a.png","width":4,"height":3,"K":[[2,1,2],[0,2,1.5],[0,0,1]],"objects":[]})");
  expect_data_error(R"({"image":"a.png","width":4,"height":3,"K":[[-2,0,2],[0,2,1.5],[0,0,1]],"objects":[]})");
  expect_data_error(R"({"image":"a.png","width":4,"height":3,"K":[[2,0,2],[0,2,1.5]],"objects":[]})");
  expect_data_error(head + R"({"id":"1","category":"","R":[[1,0,0],[0,1,0],[0,0,1]],"t":[0,0,2],"size":[1,2,3]}]})");
  expect_data_error(head + R"({"id":"1","category":"bed","R":[[2,0,0],[0,1,0],[0,0,1]],"t":[0,0,2],"size":[1,2,3]}]})");
  expect_data_error(head + R"({"id":"1","category":"bed","R":[[1,0,0],[0,1,0],[0,0,1]],"t":[0,0],"size":[1,2,3]}]})");
  expect_data_error(head + R"({"id":"1","category":"bed","R":[[1,0,0],[0,1,0],[0,0,1]],"t":[0,0,2],"size":[1,0,3]}]})");
  expect_data_error(head + R"({"id":1,"category":"bed","R":[[1,0,0],[0,1,0],[0,0,1]],"t":[0,0,2],"size":[1,2,3]}]})");
  EXPECT_NO_THROW(parse_sample(head + obj + "]}"));
}

TEST(Dataset, NumbersUseSeventeenDigits) {
  EXPECT_EQ(json_out::num(0.1), "0.10000000000000001");
  EXPECT_EQ(json_out::num(2.0), "2");
  EXPECT_THROW(json_out::num(std::nan("")), Error);
}

TEST(Dataset, FileRoundTripAndLineNumbers) {
  const auto dir = testing::scratch_dir("dataset");
  std::vector<Sample> samples;
  for (std::uint64_t i = 0; i < 5; ++i) samples.push_back(random_sample(i));
  write_dataset((dir / "d.jsonl").string(), samples);
  EXPECT_EQ(read_dataset((dir / "d.jsonl").string()), samples);

  std::ofstream((dir / "bad.jsonl")) << emit_sample(samples[0]) << "\n\n{\"image\":1}\n";
  try {
    read_dataset((dir / "bad.jsonl").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("bad.jsonl:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(read_dataset((dir / "missing.jsonl").string()), Error);
}

TEST(Dataset, RecordLine) {
  TransformRecord rec = make_record(Reflection::mirror(Axis::x), testing::kK, testing::kW, testing::kH);
  rec.flip_axis = Axis::x;
  rec.seed_path = "seed=1/epoch=0/sample=0/variant=0";
  const auto j = nlohmann::json::parse(emit_record(rec, 0, 0, "images/x.png", 2, 1));
  EXPECT_EQ(j["is_reflection"], true);
  EXPECT_EQ(j["flip_axis"], "x");
  EXPECT_EQ(j["canvas"]["width"], 640);
  EXPECT_EQ(j["canvas"]["mode"], "centered");
  EXPECT_EQ(j["operator"][0][0], -1.0);
  EXPECT_EQ(j["objects_kept"], 2);
  EXPECT_EQ(j["objects_filtered"], 1);
}

}  // namespace
}  // namespace camaug
