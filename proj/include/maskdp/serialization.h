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

// JSON encodings for reports, release sidecars and scaling records.

#ifndef MASKDP_SERIALIZATION_H_
#define MASKDP_SERIALIZATION_H_

#include "absl/status/statusor.h"
#include "json.hpp"
#include "maskdp/audit.h"
#include "maskdp/calibration.h"
#include "maskdp/ingest.h"
#include "maskdp/mechanisms.h"

namespace maskdp {

// Rounds to the given number of significant decimal digits.
double RoundSignificant(double value, int digits);

// Snake_case keys, bounds rounded to 6 significant digits, absent bounds
// omitted. "sigma_bc" repeats sigma_bc_joint, the value used for releases.
nlohmann::json CalibrationReportToJson(const CalibrationReport& report);

nlohmann::json AuditReportToJson(const AuditReport& report);

// {setting, sigma, seed, n, p} at full precision.
nlohmann::json ReleaseSidecarToJson(const ReleaseArtifact& artifact);

nlohmann::json ScalingRecordToJson(const ScalingRecord& record);
absl::StatusOr<ScalingRecord> ScalingRecordFromJson(const nlohmann::json& j);

}  // namespace maskdp

#endif  // MASKDP_SERIALIZATION_H_
