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

#include "maskdp/serialization.h"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace maskdp {
namespace {

void PutRounded(nlohmann::json& j, const char* key,
                const std::optional<double>& value) {
  if (value.has_value()) j[key] = RoundSignificant(*value, 6);
}

}  // namespace

double RoundSignificant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  return std::strtod(absl::StrFormat("%.*g", digits, value).c_str(), nullptr);
}

nlohmann::json CalibrationReportToJson(const CalibrationReport& report) {
  nlohmann::json j;
  j["epsilon"] = report.budget.epsilon;
  j["delta"] = report.budget.delta;
  j["n"] = report.shape.n;
  j["p"] = report.shape.p;
  PutRounded(j, "sigma_necessary_a", report.sigma_necessary_a);
  PutRounded(j, "sigma_sufficient_a", report.sigma_sufficient_a);
  PutRounded(j, "sigma_bc_quadratic", report.sigma_bc_quadratic);
  PutRounded(j, "sigma_bc_joint", report.sigma_bc_joint);
  PutRounded(j, "sigma_bc", report.sigma_bc_joint);
  PutRounded(j, "sigma_bc_relaxed", report.sigma_bc_relaxed);
  PutRounded(j, "sigma_bc_closed_form", report.sigma_bc_closed_form);
  if (report.binding_formula.has_value()) {
    j["binding_formula"] = BindingFormulaName(*report.binding_formula);
  }
  PutRounded(j, "ratio_bc_over_a", report.ratio_bc_over_a);
  j["setting_a_regime_invalid"] = report.setting_a_regime_invalid;
  j["errors"] = nlohmann::json::object();
  for (const auto& [field, message] : report.errors) {
    j["errors"][field] = message;
  }
  return j;
}

nlohmann::json AuditReportToJson(const AuditReport& report) {
  nlohmann::json j;
  j["estimate"] = report.estimate;
  j["std_error"] = report.std_error;
  j["analytic_reference"] = report.analytic_reference.has_value()
                                ? nlohmann::json(*report.analytic_reference)
                                : nlohmann::json(nullptr);
  j["bound_reference"] = report.bound_reference.has_value()
                             ? nlohmann::json(*report.bound_reference)
                             : nlohmann::json(nullptr);
  j["samples"] = report.samples;
  j["verdict"] = VerdictName(report.verdict);
  j["rule"] = report.rule;
  j["details"] = nlohmann::json::object();
  for (const auto& [key, value] : report.details) j["details"][key] = value;
  return j;
}

nlohmann::json ReleaseSidecarToJson(const ReleaseArtifact& artifact) {
  return {{"setting", SettingName(artifact.setting)},
          {"sigma", artifact.sigma},
          {"seed", artifact.seed},
          {"n", artifact.pseudo_data.rows()},
          {"p", artifact.pseudo_data.cols()}};
}

nlohmann::json ScalingRecordToJson(const ScalingRecord& record) {
  return {{"offset", record.offset}, {"scale", record.scale}};
}

absl::StatusOr<ScalingRecord> ScalingRecordFromJson(const nlohmann::json& j) {
  ScalingRecord record;
  try {
    record.offset = j.at("offset").get<std::vector<double>>();
    record.scale = j.at("scale").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrFormat("malformed scaling record: %s", e.what()));
  }
  if (record.offset.size() != record.scale.size()) {
    return absl::InvalidArgumentError(
        "scaling record offset and scale lengths differ");
  }
  for (double s : record.scale) {
    if (!(s > 0.0)) {
      return absl::InvalidArgumentError("scaling record has a non-positive scale");
    }
  }
  return record;
}

}  // namespace maskdp
