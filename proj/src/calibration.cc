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

#include "maskdp/calibration.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "maskdp/quantiles.h"

namespace maskdp {
namespace {

constexpr double kTieTolerance = 1e-9;

absl::Status RequireEpsilonBelowOne(const PrivacyBudget& budget) {
  if (budget.epsilon >= 1.0) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "bound requires epsilon < 1, got epsilon = %g", budget.epsilon));
  }
  return absl::OkStatus();
}

absl::Status RequireSettingARegime(const PrivacyBudget& budget) {
  if (budget.delta >= 0.5) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "setting-A bound requires delta < 1/2, got delta = %g", budget.delta));
  }
  return RequireEpsilonBelowOne(budget);
}

absl::Status ValidateNorm(double delta_norm) {
  if (!(delta_norm > 0.0 && delta_norm <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "neighbor distance must lie in (0, 1], got %g", delta_norm));
  }
  return absl::OkStatus();
}

// b = (n-p) sqrt(p) + 2 p gamma_{delta,np}.
absl::StatusOr<double> LinearCoefficient(const PrivacyBudget& budget,
                                         const ProblemShape& shape) {
  absl::StatusOr<double> chi =
      ChiSquareUpperQuantile(budget.delta, shape.n * shape.p);
  if (!chi.ok()) return chi.status();
  const double n = static_cast<double>(shape.n);
  const double p = static_cast<double>(shape.p);
  return (n - p) * std::sqrt(p) + 2.0 * p * *chi;
}

}  // namespace

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon,
                                                    double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be positive, got %g", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  return PrivacyBudget{epsilon, delta};
}

absl::StatusOr<ProblemShape> ProblemShape::Create(int64_t n, int64_t p) {
  if (p < 1 || n <= p) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "n > p required (and p >= 1), got n = %d, p = %d", n, p));
  }
  return ProblemShape{n, p};
}

std::string BindingFormulaName(BindingFormula formula) {
  switch (formula) {
    case BindingFormula::kASufficient:
      return "a_sufficient";
    case BindingFormula::kBCQuadratic:
      return "bc_quadratic";
  }
  return "unknown";
}

namespace internal {

absl::StatusOr<double> SigmaNecessaryAForNorm(const PrivacyBudget& budget,
                                              double delta_norm) {
  if (absl::Status s = RequireSettingARegime(budget); !s.ok()) return s;
  if (absl::Status s = ValidateNorm(delta_norm); !s.ok()) return s;
  absl::StatusOr<double> gamma = GaussianUpperQuantile(budget.delta);
  if (!gamma.ok()) return gamma.status();
  return delta_norm * *gamma / budget.epsilon;
}

absl::StatusOr<double> SigmaSufficientAForNorm(const PrivacyBudget& budget,
                                               double delta_norm) {
  if (absl::Status s = RequireSettingARegime(budget); !s.ok()) return s;
  if (absl::Status s = ValidateNorm(delta_norm); !s.ok()) return s;
  absl::StatusOr<double> gamma = GaussianUpperQuantile(budget.delta);
  if (!gamma.ok()) return gamma.status();
  const double g = *gamma;
  return delta_norm * g / budget.epsilon * (1.0 + 1.0 / (2.0 * g * g));
}

absl::StatusOr<double> MaskedQuadraticResidual(const PrivacyBudget& budget,
                                               const ProblemShape& shape,
                                               double sigma) {
  absl::StatusOr<double> b = LinearCoefficient(budget, shape);
  if (!b.ok()) return b.status();
  const double n = static_cast<double>(shape.n);
  const double p = static_cast<double>(shape.p);
  const double s = sigma * sigma;
  return budget.epsilon * (n - p) * s * s - *b * s - 2.0 * n * p * p;
}

}  // namespace internal

absl::StatusOr<double> SigmaNecessaryA(const PrivacyBudget& budget) {
  return internal::SigmaNecessaryAForNorm(budget, 1.0);
}

absl::StatusOr<double> SigmaSufficientA(const PrivacyBudget& budget) {
  return internal::SigmaSufficientAForNorm(budget, 1.0);
}

absl::StatusOr<double> SigmaSufficientASimple(const PrivacyBudget& budget) {
  if (budget.delta >= 0.05) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "simplified bound requires delta < 0.05, got delta = %g",
        budget.delta));
  }
  if (absl::Status s = RequireEpsilonBelowOne(budget); !s.ok()) return s;
  return 1.7 * std::sqrt(-std::log(budget.delta)) / budget.epsilon;
}

absl::StatusOr<double> SigmaMaskedQuadratic(const PrivacyBudget& budget,
                                            const ProblemShape& shape) {
  if (shape.n <= shape.p) {
    return absl::InvalidArgumentError("n > p required");
  }
  absl::StatusOr<double> b = LinearCoefficient(budget, shape);
  if (!b.ok()) return b.status();
  const double n = static_cast<double>(shape.n);
  const double p = static_cast<double>(shape.p);
  const double a = (n - p) * budget.epsilon;
  const double variance =
      (*b + std::sqrt(*b * *b + 8.0 * n * p * p * a)) / (2.0 * a);
  return std::sqrt(variance);
}

absl::StatusOr<JointSigma> SigmaMaskedJoint(const PrivacyBudget& budget,
                                            const ProblemShape& shape) {
  absl::StatusOr<double> quadratic = SigmaMaskedQuadratic(budget, shape);
  if (!quadratic.ok()) return quadratic.status();
  absl::StatusOr<double> unmasked = SigmaSufficientA(budget);
  if (!unmasked.ok()) {
    if (unmasked.status().code() != absl::StatusCode::kFailedPrecondition) {
      return unmasked.status();
    }
    return JointSigma{.sigma = *quadratic,
                      .binding = BindingFormula::kBCQuadratic,
                      .setting_a_regime_invalid = true};
  }
  const double scale = std::max(*unmasked, *quadratic);
  if (*unmasked <= *quadratic + kTieTolerance * scale) {
    return JointSigma{.sigma = *unmasked,
                      .binding = BindingFormula::kASufficient};
  }
  return JointSigma{.sigma = *quadratic,
                    .binding = BindingFormula::kBCQuadratic};
}

absl::StatusOr<double> SigmaMaskedRelaxed(const PrivacyBudget& budget,
                                          const ProblemShape& shape) {
  if (absl::Status s = RequireEpsilonBelowOne(budget); !s.ok()) return s;
  if (shape.n <= shape.p) {
    return absl::InvalidArgumentError("n > p required");
  }
  absl::StatusOr<double> chi =
      ChiSquareUpperQuantile(budget.delta, shape.n * shape.p);
  if (!chi.ok()) return chi.status();
  const double n = static_cast<double>(shape.n);
  const double p = static_cast<double>(shape.p);
  const double denom = (n - p) * budget.epsilon;
  return std::sqrt(std::max({2.0, 4.0 * n * p * p / denom,
                             4.0 * p * *chi / denom}));
}

absl::StatusOr<double> SigmaMaskedClosedForm(const PrivacyBudget& budget,
                                             const ProblemShape& shape) {
  if (absl::Status s = RequireEpsilonBelowOne(budget); !s.ok()) return s;
  if (shape.n <= shape.p) {
    return absl::InvalidArgumentError("n > p required");
  }
  absl::StatusOr<double> chi_bound =
      ChiSquareQuantileBound(budget.delta, shape.n * shape.p);
  if (!chi_bound.ok()) return chi_bound.status();
  const double n = static_cast<double>(shape.n);
  const double p = static_cast<double>(shape.p);
  return std::sqrt(*chi_bound / (n - p)) * std::sqrt(4.0 * p / budget.epsilon);
}

absl::StatusOr<CalibrationReport> Calibrate(const PrivacyBudget& budget,
                                            const ProblemShape& shape) {
  if (shape.n <= shape.p || shape.p < 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "n > p required, got n = %d, p = %d", shape.n, shape.p));
  }
  CalibrationReport report{.budget = budget, .shape = shape};

  auto record = [&report](const char* field, absl::StatusOr<double> value,
                          std::optional<double>& slot) -> absl::Status {
    if (value.ok()) {
      slot = *value;
      return absl::OkStatus();
    }
    if (value.status().code() == absl::StatusCode::kFailedPrecondition) {
      report.errors[field] = std::string(value.status().message());
      return absl::OkStatus();
    }
    return value.status();
  };

  if (absl::Status s = record("sigma_necessary_a", SigmaNecessaryA(budget),
                              report.sigma_necessary_a);
      !s.ok()) {
    return s;
  }
  if (absl::Status s = record("sigma_sufficient_a", SigmaSufficientA(budget),
                              report.sigma_sufficient_a);
      !s.ok()) {
    return s;
  }
  if (absl::Status s =
          record("sigma_bc_quadratic", SigmaMaskedQuadratic(budget, shape),
                 report.sigma_bc_quadratic);
      !s.ok()) {
    return s;
  }
  if (absl::Status s =
          record("sigma_bc_relaxed", SigmaMaskedRelaxed(budget, shape),
                 report.sigma_bc_relaxed);
      !s.ok()) {
    return s;
  }
  if (absl::Status s =
          record("sigma_bc_closed_form", SigmaMaskedClosedForm(budget, shape),
                 report.sigma_bc_closed_form);
      !s.ok()) {
    return s;
  }

  absl::StatusOr<JointSigma> joint = SigmaMaskedJoint(budget, shape);
  if (!joint.ok()) return joint.status();
  report.sigma_bc_joint = joint->sigma;
  report.binding_formula = joint->binding;
  report.setting_a_regime_invalid = joint->setting_a_regime_invalid;
  if (report.sigma_sufficient_a.has_value()) {
    report.ratio_bc_over_a = joint->sigma / *report.sigma_sufficient_a;
  }
  return report;
}

absl::StatusOr<std::vector<CalibrationReport>> SigmaComparisonTable(
    const ComparisonGrid& grid) {
  std::vector<CalibrationReport> rows;
  rows.reserve(grid.epsilons.size() * grid.deltas.size() * grid.ps.size() *
               grid.ns.size());
  for (double epsilon : grid.epsilons) {
    for (double delta : grid.deltas) {
      absl::StatusOr<PrivacyBudget> budget =
          PrivacyBudget::Create(epsilon, delta);
      if (!budget.ok()) return budget.status();
      for (int64_t p : grid.ps) {
        for (int64_t n : grid.ns) {
          absl::StatusOr<ProblemShape> shape = ProblemShape::Create(n, p);
          if (!shape.ok()) return shape.status();
          absl::StatusOr<CalibrationReport> report = Calibrate(*budget, *shape);
          if (!report.ok()) return report.status();
          rows.push_back(*std::move(report));
        }
      }
    }
  }
  return rows;
}

}  // namespace maskdp
