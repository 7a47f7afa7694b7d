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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace maskdp {
namespace {

using Record = std::vector<std::string>;

std::string_view Trim(std::string_view s) {
  const absl::string_view t =
      absl::StripAsciiWhitespace(absl::string_view(s.data(), s.size()));
  return std::string_view(t.data(), t.size());
}

std::optional<double> ParseNumber(std::string_view cell) {
  cell = Trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string QuoteField(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

}  // namespace

absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsvRecords(
    std::string_view text) {
  std::vector<Record> records;
  Record record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  int64_t line = 1;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !Trim(field).empty()) {
          return absl::InvalidArgumentError(absl::StrFormat(
              "stray quote inside an unquoted field on line %d", line));
        }
        field.clear();
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) {
    return absl::InvalidArgumentError("unterminated quoted field");
  }
  if (field_started || !record.empty()) end_record();
  return records;
}

absl::StatusOr<NumericTable> ParseNumericCsv(std::string_view text) {
  absl::StatusOr<std::vector<Record>> records = ParseCsvRecords(text);
  if (!records.ok()) return records.status();
  if (records->empty()) {
    return absl::InvalidArgumentError("CSV input is empty");
  }
  NumericTable table;
  size_t first_data = 0;
  const Record& first = records->front();
  if (std::any_of(first.begin(), first.end(), [](const std::string& cell) {
        return !ParseNumber(cell).has_value();
      })) {
    for (const std::string& cell : first) {
      table.header.emplace_back(Trim(cell));
    }
    first_data = 1;
  }
  const size_t cols = first.size();
  const size_t rows = records->size() - first_data;
  if (rows == 0) {
    return absl::InvalidArgumentError("CSV input has a header but no data");
  }
  table.values.resize(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const Record& record = (*records)[first_data + r];
    const size_t row_number = first_data + r + 1;
    if (record.size() != cols) {
      return absl::InvalidArgumentError(
          absl::StrFormat("row %d has %d fields, expected %d", row_number,
                          record.size(), cols));
    }
    for (size_t c = 0; c < cols; ++c) {
      const std::optional<double> value = ParseNumber(record[c]);
      if (!value.has_value()) {
        return absl::InvalidArgumentError(
            absl::StrFormat("non-numeric cell at row %d, column %d: \"%s\"",
                            row_number, c + 1, record[c]));
      }
      table.values(r, c) = *value;
    }
  }
  return table;
}

ScalingRecord FitScaling(const Matrix& raw) {
  ScalingRecord record;
  for (int64_t j = 0; j < raw.cols(); ++j) {
    const double lo = raw.col(j).minCoeff();
    const double hi = raw.col(j).maxCoeff();
    if (hi > lo) {
      record.offset.push_back(0.5 * hi + 0.5 * lo);
      record.scale.push_back(0.5 * hi - 0.5 * lo);
    } else {
      record.offset.push_back(lo);
      record.scale.push_back(1.0);
    }
  }
  return record;
}

Matrix ApplyScaling(const Matrix& raw, const ScalingRecord& record) {
  Matrix scaled(raw.rows(), raw.cols());
  for (int64_t i = 0; i < raw.rows(); ++i) {
    for (int64_t j = 0; j < raw.cols(); ++j) {
      scaled(i, j) = std::clamp(
          (raw(i, j) - record.offset[j]) / record.scale[j], -1.0, 1.0);
    }
  }
  return scaled;
}

Matrix InvertScaling(const Matrix& scaled, const ScalingRecord& record) {
  Matrix raw(scaled.rows(), scaled.cols());
  for (int64_t i = 0; i < scaled.rows(); ++i) {
    for (int64_t j = 0; j < scaled.cols(); ++j) {
      raw(i, j) = scaled(i, j) * record.scale[j] + record.offset[j];
    }
  }
  return raw;
}

absl::StatusOr<IngestResult> Ingest(std::string_view csv_text) {
  absl::StatusOr<NumericTable> table = ParseNumericCsv(csv_text);
  if (!table.ok()) return table.status();
  ScalingRecord scaling = FitScaling(table->values);
  absl::StatusOr<DataMatrix> data =
      DataMatrix::Create(ApplyScaling(table->values, scaling));
  if (!data.ok()) return data.status();
  return IngestResult{.data = *std::move(data),
                      .scaling = std::move(scaling),
                      .header = std::move(table->header)};
}

std::string FormatCsv(const Matrix& values,
                      const std::vector<std::string>& header) {
  std::string out;
  if (!header.empty()) {
    std::vector<std::string> quoted;
    for (const std::string& h : header) quoted.push_back(QuoteField(h));
    absl::StrAppend(&out, absl::StrJoin(quoted, ","), "\n");
  }
  for (int64_t i = 0; i < values.rows(); ++i) {
    for (int64_t j = 0; j < values.cols(); ++j) {
      absl::StrAppendFormat(&out, j == 0 ? "%.17g" : ",%.17g", values(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace maskdp
