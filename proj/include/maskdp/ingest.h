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

// CSV ingestion with per-column min-max scaling into [-1, 1], and CSV output
// of released matrices.
//
// Column j is mapped by x -> (x - offset_j) / scale_j with
//   offset_j = (max_j + min_j) / 2,  scale_j = (max_j - min_j) / 2,
// which is (2x - max - min) / (max - min). A constant column gets offset equal
// to its value and scale 1, so it maps to 0.

#ifndef MASKDP_INGEST_H_
#define MASKDP_INGEST_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "maskdp/mechanisms.h"

namespace maskdp {

struct ScalingRecord {
  std::vector<double> offset;
  std::vector<double> scale;  // always > 0
};

struct NumericTable {
  std::vector<std::string> header;  // empty when the input had none
  Matrix values;
};

// Splits CSV text into records of raw (unquoted) fields. Blank lines are
// skipped.
absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsvRecords(
    std::string_view text);

// Parses a rectangular numeric CSV (RFC 4180 quoting, '.' decimals). The first
// record is treated as a header when any of its cells is not a number. Errors
// name the 1-based row and column of the offending cell.
absl::StatusOr<NumericTable> ParseNumericCsv(std::string_view text);

ScalingRecord FitScaling(const Matrix& raw);

// Applies the record; results are clamped to [-1, 1] to absorb roundoff.
Matrix ApplyScaling(const Matrix& raw, const ScalingRecord& record);
Matrix InvertScaling(const Matrix& scaled, const ScalingRecord& record);

struct IngestResult {
  DataMatrix data;
  ScalingRecord scaling;
  std::vector<std::string> header;
};

absl::StatusOr<IngestResult> Ingest(std::string_view csv_text);

// Writes every entry with 17 significant digits so values round-trip exactly.
std::string FormatCsv(const Matrix& values,
                      const std::vector<std::string>& header = {});

}  // namespace maskdp

#endif  // MASKDP_INGEST_H_
