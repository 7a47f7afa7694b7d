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

// Inverse-CDF routines for the standard Gaussian and central chi-square
// distributions, together with the closed-form brackets and tail bounds used
// when calibrating noise scales.
//
// Everything here is a pure function of its arguments.

#ifndef MASKDP_QUANTILES_H_
#define MASKDP_QUANTILES_H_

#include <cstdint>

#include "absl/status/statusor.h"

namespace maskdp {

// Degrees of freedom above which ChiSquareUpperQuantile starts from the
// Wilson-Hilferty approximation and only polishes it with Newton steps.
inline constexpr double kWilsonHilfertyDof = 1e7;

// Closed-form bracket around the Gaussian upper quantile.
struct QuantileBracket {
  double lower;
  double exact;
  double upper;
};

// Result of checking the central chi-square tail inequality
//   P[chi2_k >= k + 2 sqrt(k x) + 2x] <= exp(-x).
struct BirgeTail {
  double bound_prob;  // exp(-x)
  double tail_prob;   // the exact tail probability
  bool holds() const { return tail_prob <= bound_prob; }
};

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
// Uses the power series for x < a + 1 and a Lentz continued fraction
// otherwise. Both are evaluated in log space so that neither underflows for
// large shape parameters.
double RegularizedGammaP(double a, double x);
double RegularizedGammaQ(double a, double x);
double LogRegularizedGammaP(double a, double x);
double LogRegularizedGammaQ(double a, double x);

// Standard normal survival function P[Z > t] and its logarithm. The log form
// stays finite far into the tail (t of several hundred).
double GaussianSurvival(double t);
double LogGaussianSurvival(double t);
double LogGaussianDensity(double t);

// Chi-square survival P[chi2_dof > x] and its logarithm.
double ChiSquareSurvival(double x, double dof);
double LogChiSquareSurvival(double x, double dof);
double LogChiSquareDensity(double x, double dof);

// Upper delta-quantile of the standard Gaussian: the t with P[Z > t] = delta.
// Absolute error below 1e-9. Returns InvalidArgument unless 0 < delta < 1.
absl::StatusOr<double> GaussianUpperQuantile(double delta);

// The closed-form ends sqrt(ln(1/delta)) and sqrt(2 ln(1/delta)) together with
// the exact quantile. Inputs with delta >= 0.05 get FailedPrecondition. The
// upper end holds throughout; the lower end exceeds the quantile for delta
// above about 0.0314, so callers must compare rather than assume the order.
absl::StatusOr<QuantileBracket> GaussianQuantileBracket(double delta);

// Upper delta-quantile of the central chi-square distribution with `dof`
// degrees of freedom, relative error below 1e-8.
absl::StatusOr<double> ChiSquareUpperQuantile(double delta, int64_t dof);

// 2 dof + 3 ln(1/delta), an upper bound on ChiSquareUpperQuantile.
absl::StatusOr<double> ChiSquareQuantileBound(double delta, int64_t dof);

// Evaluates both sides of the central chi-square tail inequality at `x`.
absl::StatusOr<BirgeTail> BirgeTailCheck(int64_t dof, double x);

}  // namespace maskdp

#endif  // MASKDP_QUANTILES_H_
