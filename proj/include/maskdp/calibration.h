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

// Noise-scale calibration for releasing an n x p data matrix under
// (epsilon, delta)-differential privacy.
//
// Setting A releases X + C with C i.i.d. N(0, sigma^2). Settings B and C add
// a Haar-random orthogonal n x n mask, releasing A(X + C) or AX + C. The
// bounds below are lower bounds on sigma: "necessary" bounds must be met for
// the violation-set mass to stay below delta, "sufficient" bounds guarantee
// it. All public bounds assume the worst-case neighbor distance ||X - X'||=1.

#ifndef MASKDP_CALIBRATION_H_
#define MASKDP_CALIBRATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace maskdp {

// (epsilon, delta) with epsilon > 0 and 0 < delta < 1. Tighter regime
// requirements are checked by each bound.
struct PrivacyBudget {
  double epsilon;
  double delta;

  static absl::StatusOr<PrivacyBudget> Create(double epsilon, double delta);
};

// n records by p attributes. Every masked-setting bound divides by n - p, so
// n > p >= 1 is required.
struct ProblemShape {
  int64_t n;
  int64_t p;

  static absl::StatusOr<ProblemShape> Create(int64_t n, int64_t p);
};

enum class BindingFormula {
  kASufficient,   // the unmasked sufficient bound is the smaller one
  kBCQuadratic,   // the chi-square quadratic-root bound is the smaller one
};

std::string BindingFormulaName(BindingFormula formula);

// Setting A, necessary: gamma_delta / epsilon, where gamma_delta is the upper
// delta-quantile of N(0, 1). Requires delta < 1/2 and epsilon < 1.
absl::StatusOr<double> SigmaNecessaryA(const PrivacyBudget& budget);

// Setting A, sufficient: (gamma_delta / epsilon) (1 + 1 / (2 gamma_delta^2)).
absl::StatusOr<double> SigmaSufficientA(const PrivacyBudget& budget);

// Setting A, simplified sufficient bound 1.7 sqrt(ln(1/delta)) / epsilon.
// Requires delta < 0.05 and epsilon < 1.
absl::StatusOr<double> SigmaSufficientASimple(const PrivacyBudget& budget);

// Settings B/C: the larger root of
//   epsilon (n-p) s^2 - b s - 2 n p^2 = 0,  s = sigma^2,
// with b = (n-p) sqrt(p) + 2 p gamma_{delta,np} and gamma_{delta,np} the
// upper delta-quantile of chi-square with np degrees of freedom.
absl::StatusOr<double> SigmaMaskedQuadratic(const PrivacyBudget& budget,
                                            const ProblemShape& shape);

struct JointSigma {
  double sigma;
  BindingFormula binding;
  // Set when epsilon/delta fall outside the setting-A regime, in which case
  // sigma is the quadratic-root value alone.
  bool setting_a_regime_invalid = false;
};

// min(SigmaSufficientA, SigmaMaskedQuadratic). Ties within 1e-9 relative
// report kASufficient.
absl::StatusOr<JointSigma> SigmaMaskedJoint(const PrivacyBudget& budget,
                                            const ProblemShape& shape);

// sqrt(max(2, 4np^2 / ((n-p) eps), 4p gamma_{delta,np} / ((n-p) eps))).
// Requires epsilon < 1.
absl::StatusOr<double> SigmaMaskedRelaxed(const PrivacyBudget& budget,
                                          const ProblemShape& shape);

// sqrt((2np + 3 ln(1/delta)) / (n-p)) sqrt(4p / eps). Requires epsilon < 1.
absl::StatusOr<double> SigmaMaskedClosedForm(const PrivacyBudget& budget,
                                             const ProblemShape& shape);

// Every bound for one (budget, shape). Bounds whose regime check fails are
// left empty and the reason is recorded in `errors`, keyed by field name.
// There is no necessary bound for the masked settings.
struct CalibrationReport {
  PrivacyBudget budget;
  ProblemShape shape;
  std::optional<double> sigma_necessary_a;
  std::optional<double> sigma_sufficient_a;
  std::optional<double> sigma_bc_quadratic;
  std::optional<double> sigma_bc_joint;
  std::optional<double> sigma_bc_relaxed;
  std::optional<double> sigma_bc_closed_form;
  std::optional<BindingFormula> binding_formula;
  std::optional<double> ratio_bc_over_a;
  bool setting_a_regime_invalid = false;
  std::map<std::string, std::string> errors;

  bool ok() const { return errors.empty(); }
};

// Errors only on invalid shape (n <= p); regime failures land in the report.
absl::StatusOr<CalibrationReport> Calibrate(const PrivacyBudget& budget,
                                            const ProblemShape& shape);

struct ComparisonGrid {
  std::vector<double> epsilons = {0.1, 0.01, 0.001};
  std::vector<double> deltas = {0.01, 0.001};
  std::vector<int64_t> ps = {1, 5, 20};
  std::vector<int64_t> ns = {100, 1000, 10000};
};

// Rows in grid order: epsilon outermost, then delta, p, n.
absl::StatusOr<std::vector<CalibrationReport>> SigmaComparisonTable(
    const ComparisonGrid& grid = {});

namespace internal {

// Setting-A bounds for an explicit neighbor distance ||Delta||.
absl::StatusOr<double> SigmaNecessaryAForNorm(const PrivacyBudget& budget,
                                              double delta_norm);
absl::StatusOr<double> SigmaSufficientAForNorm(const PrivacyBudget& budget,
                                               double delta_norm);

// epsilon (n-p) sigma^4 - b sigma^2 - 2 n p^2, the polynomial whose larger
// root SigmaMaskedQuadratic returns.
absl::StatusOr<double> MaskedQuadraticResidual(const PrivacyBudget& budget,
                                               const ProblemShape& shape,
                                               double sigma);

}  // namespace internal
}  // namespace maskdp

#endif  // MASKDP_CALIBRATION_H_
