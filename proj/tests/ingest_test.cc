// Copyright 2026 The maskdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maskdp/ingest.h"

#include <cmath>
#include <random>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "maskdp/serialization.h"

namespace maskdp {
namespace {

TEST(ParseNumericCsvTest, DetectsHeader) {
  const NumericTable t = *ParseNumericCsv("a,b\n1,2\n3,4\n");
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.values.rows(), 2);
  EXPECT_EQ(t.values(1, 0), 3.0);
  const NumericTable bare = *ParseNumericCsv("1,2\r\n3,4.5e-1\r\n\r\n");
  EXPECT_TRUE(bare.header.empty());
  EXPECT_EQ(bare.values(1, 1), 0.45);
}

TEST(ParseNumericCsvTest, QuotedFields) {
  const NumericTable t =
      *ParseNumericCsv("\"x, \"\"first\"\"\",y\n\" 1.5\",-2\n");
  EXPECT_EQ(t.header[0], "x, \"first\"");
  EXPECT_EQ(t.values(0, 0), 1.5);
  EXPECT_EQ(t.values(0, 1), -2.0);
}

TEST(ParseNumericCsvTest, ErrorsNameRowAndColumn) {
  const absl::StatusOr<NumericTable> bad = ParseNumericCsv("a,b\n1,2\n3,oops\n");
  ASSERT_FALSE(bad.ok());
  EXPECT_NE(bad.status().message().find("row 3, column 2"), std::string::npos)
      << bad.status().message();
  EXPECT_FALSE(ParseNumericCsv("").ok());
  EXPECT_FALSE(ParseNumericCsv("\n\n").ok());
  EXPECT_FALSE(ParseNumericCsv("a,b\n").ok());
  EXPECT_FALSE(ParseNumericCsv("1,2\n3\n").ok());
  EXPECT_FALSE(ParseNumericCsv("1,nan\n").ok());
  EXPECT_FALSE(ParseNumericCsv("\"1,2\n").ok());
}

TEST(ScalingTest, EndpointsAndConstantColumn) {
  Matrix raw(3, 2);
  raw << 0, 7, 5, 7, 10, 7;
  const ScalingRecord record = FitScaling(raw);
  const Matrix scaled = ApplyScaling(raw, record);
  EXPECT_EQ(scaled(0, 0), -1.0);
  EXPECT_EQ(scaled(1, 0), 0.0);
  EXPECT_EQ(scaled(2, 0), 1.0);
  EXPECT_EQ(scaled.col(1), Vector::Zero(3));
  EXPECT_EQ(record.offset[1], 7.0);
  EXPECT_EQ(record.scale[1], 1.0);
}

TEST(ScalingTest, RoundTripIsNearExact) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uniform(-1e6, 1e6);
  Matrix raw(50, 4);
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 4; ++j) raw(i, j) = uniform(rng) * std::pow(10.0, -j);
  }
  const ScalingRecord record = FitScaling(raw);
  const Matrix scaled = ApplyScaling(raw, record);
  EXPECT_LE(scaled.cwiseAbs().maxCoeff(), 1.0);
  const Matrix back = InvertScaling(scaled, record);
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_LE(std::fabs(back(i, j) - raw(i, j)),
                1e-12 * std::max(std::fabs(raw(i, j)), record.scale[j]));
    }
  }
}

TEST(IngestTest, ProducesValidDataMatrix) {
  const IngestResult r = *Ingest("v\n0\n5\n10\n");
  EXPECT_EQ(r.header, std::vector<std::string>{"v"});
  EXPECT_EQ(r.data.values()(0, 0), -1.0);
  EXPECT_EQ(r.data.values()(2, 0), 1.0);
}

TEST(FormatCsvTest, RoundTripsDoubles) {
  Matrix m(2, 2);
  m << 0.1, -1.0 / 3.0, 1e-300, 12345678.901234567;
  const std::string csv = FormatCsv(m, {"a", "b,c"});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "a,\"b,c\"");
  const NumericTable back = *ParseNumericCsv(csv);
  EXPECT_TRUE((back.values.array() == m.array()).all());
  EXPECT_EQ(back.header[1], "b,c");
}

TEST(SerializationTest, RoundSignificant) {
  EXPECT_EQ(RoundSignificant(6.161804, 6), 6.1618);
  EXPECT_EQ(RoundSignificant(3251.9876, 6), 3251.99);
  EXPECT_EQ(RoundSignificant(0.0, 6), 0.0);
}

TEST(SerializationTest, CalibrationReportKeys) {
  const CalibrationReport r =
      *Calibrate(*PrivacyBudget::Create(0.1, 0.01), *ProblemShape::Create(100, 1));
  const nlohmann::json j = CalibrationReportToJson(r);
  EXPECT_NEAR(j.at("sigma_bc").get<double>(), 6.2, 0.05);
  EXPECT_EQ(j.at("sigma_bc"), j.at("sigma_bc_joint"));
  EXPECT_EQ(j.at("binding_formula"), "bc_quadratic");
  EXPECT_TRUE(j.at("errors").empty());
  EXPECT_FALSE(j.contains("sigma_necessary_bc"));

  const CalibrationReport bad =
      *Calibrate(*PrivacyBudget::Create(2.0, 0.01), *ProblemShape::Create(100, 1));
  const nlohmann::json jb = CalibrationReportToJson(bad);
  EXPECT_FALSE(jb.contains("sigma_sufficient_a"));
  EXPECT_TRUE(jb.at("setting_a_regime_invalid").get<bool>());
  EXPECT_TRUE(jb.at("errors").contains("sigma_sufficient_a"));
}

TEST(SerializationTest, AuditReportShape) {
  AuditReport r;
  r.estimate = 0.25;
  r.analytic_reference = 0.2;
  r.samples = 10;
  r.verdict = Verdict::kViolated;
  const nlohmann::json j = AuditReportToJson(r);
  for (const char* key : {"estimate", "std_error", "analytic_reference",
                          "bound_reference", "samples", "verdict"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j.at("bound_reference").is_null());
  EXPECT_EQ(j.at("verdict"), "violated");
}

TEST(SerializationTest, SidecarAndScaling) {
  const ReleaseArtifact artifact{Matrix::Zero(3, 2), Setting::kC, 0.123456789,
                                 42};
  const nlohmann::json j = ReleaseSidecarToJson(artifact);
  EXPECT_EQ(j.at("setting"), "C");
  EXPECT_EQ(j.at("sigma").get<double>(), 0.123456789);
  EXPECT_EQ(j.at("seed"), 42);
  EXPECT_EQ(j.at("n"), 3);
  EXPECT_EQ(j.at("p"), 2);

  const ScalingRecord record{{1.0, -2.5}, {3.0, 0.5}};
  const ScalingRecord back =
      *ScalingRecordFromJson(ScalingRecordToJson(record));
  EXPECT_EQ(back.offset, record.offset);
  EXPECT_EQ(back.scale, record.scale);
  EXPECT_FALSE(
      ScalingRecordFromJson(nlohmann::json{{"offset", {1.0}}, {"scale", {0.0}}})
          .ok());
  EXPECT_FALSE(ScalingRecordFromJson(nlohmann::json{{"offset", 1}}).ok());
}

}  // namespace
}  // namespace maskdp
