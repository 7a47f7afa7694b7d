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

// Numerical audits of the density-ratio machinery behind the calibration
// bounds.
//
// For neighbors X, X' the violation set is
//   S = { y : p_{Y(X)}(y) > e^eps p_{Y(X')}(y) },
// and a mechanism is (eps, delta)-DP whenever P[Y(X) in S] <= delta. The
// density ratio is exp((|X'|^2 - |X|^2) / (2 sigma^2)) times
//   exp(tr(y X^T) / sigma^2) / exp(tr(y X'^T) / sigma^2)          (setting A)
//   E_A exp(tr(A y X^T) / sigma^2) / E_A exp(tr(A y X'^T) / sigma^2)  (B, C)
// with A Haar-distributed. The masked expectations have no closed form and
// are estimated by direct averaging over a pool of sampled orthogonal
// matrices.
//
// Every Monte Carlo verdict uses a fixed three-standard-error rule, spelled
// out in AuditReport::rule.

#ifndef MASKDP_AUDIT_H_
#define MASKDP_AUDIT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "maskdp/mechanisms.h"

namespace maskdp {

inline constexpr double kVerdictStdErrors = 3.0;

// Scale limits for nested Haar Monte Carlo.
inline constexpr int64_t kMaxAuditRows = 8;
inline constexpr int64_t kMaxRatioBoundRows = 6;
inline constexpr int64_t kMaxAuditCols = 2;
inline constexpr int64_t kMaxSphereDimension = 32;

inline constexpr int64_t kDefaultInnerSamples = 100000;
inline constexpr int64_t kDefaultSphereSamples = 100000;

enum class Verdict { kConsistent, kViolated };

std::string VerdictName(Verdict verdict);

struct AuditReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<double> analytic_reference;
  std::optional<double> bound_reference;
  int64_t samples = 0;
  Verdict verdict = Verdict::kConsistent;
  std::string rule;
  std::vector<std::pair<std::string, double>> details;

  bool consistent() const { return verdict == Verdict::kConsistent; }
};

// A unit-distance neighbor pair for audits: row 0 of X is zero and row 0 of
// X' is (1, ..., 1) / sqrt(p); the other rows are uniform on [-1, 1], drawn
// from `seed`.
absl::StatusOr<NeighborPair> AuditNeighborPair(int64_t n, int64_t p,
                                               uint64_t seed);

// log p_{Y(X)}(y) / p_{Y(X')}(y) for setting A, reduced to the differing row:
//   (|D|^2 + 2 X_r D^T) / (2 sigma^2) - y_r D^T / sigma^2.
double LogDensityRatioA(const Matrix& y, const NeighborPair& pair,
                        double sigma);

// Exact P[Y(X) in S] for setting A:
//   P[Z > sigma eps / |D| - |D| / (2 sigma)],   Z ~ N(0, 1).
// Zero when the pair is identical.
absl::StatusOr<double> ViolationProbabilityAAnalytic(const NeighborPair& pair,
                                                     double sigma,
                                                     double epsilon);

struct MonteCarloOptions {
  int64_t samples = 100000;
  uint64_t seed = 0;
  // Haar pool size for the masked-setting density estimates.
  int64_t inner_samples = kDefaultInnerSamples;
  // When set, the verdict also requires estimate - 3 SE <= delta.
  std::optional<double> delta;
};

// Fraction of releases Y(X) whose (estimated) log density ratio exceeds eps,
// with its binomial standard error. Setting A uses the closed form and also
// reports the analytic probability; settings B and C estimate both masked
// densities from a shared pool of `inner_samples` Haar matrices and refuse
// problems larger than kMaxAuditRows x kMaxAuditCols.
absl::StatusOr<AuditReport> ViolationProbabilityMonteCarlo(
    const NeighborPair& pair, Setting setting, double sigma, double epsilon,
    const MonteCarloOptions& options);

// Estimated masked-setting log density ratio for one release value.
struct LogRatioEstimate {
  double log_ratio;
  double std_error;  // jackknife over the Haar pool
};

// A fixed pool of Haar matrices, each flattened row-major.
class HaarPool {
 public:
  HaarPool(int64_t n, int64_t size, uint64_t seed);

  int64_t n() const { return n_; }
  int64_t size() const { return flattened_.rows(); }

  LogRatioEstimate EstimateLogRatio(const Matrix& y, const NeighborPair& pair,
                                    double sigma) const;

 private:
  int64_t n_;
  Matrix flattened_;
};

// G_q(t) = int_{-1}^{1} exp(t u) (1 - u^2)^((q - 2) / 2) du for q >= 2.
// Returns OutOfRange where the value overflows a double; LogGFunction covers
// that range.
absl::StatusOr<double> GFunction(int q, double t);
absl::StatusOr<double> LogGFunction(int q, double t);

// Uniform-sphere projection integral
//   int_{-1}^{1} exp(s u) (1 - u^2)^((q - 3) / 2) du / c_q,
//   c_q = sqrt(pi) Gamma((q - 1) / 2) / Gamma(q / 2),
// i.e. E[exp(s b_1)] for b uniform on the unit sphere in R^q.
absl::StatusOr<double> SphereProjectionIntegral(int q, double s);

// Checks G_q(t2) / G_q(t1) <= exp(|t1^2 - t2^2| / (2q)) and, at the midpoint
// t, 0 < G_q'(t) < (t / q) G_q(t) by central differences. The estimate and
// bound are reported on the log scale.
absl::StatusOr<AuditReport> GRatioBoundCheck(int q, double t1, double t2);

// Draws a random q-dimensional subspace of R^n and compares the Monte Carlo
// mean of exp(b . v) over uniform unit vectors b in that subspace with
// SphereProjectionIntegral(q, |proj(v)|).
absl::StatusOr<AuditReport> SphereIntegralCheck(
    int n, int q, const Vector& v, uint64_t subspace_seed,
    int64_t samples = kDefaultSphereSamples);

// For setting-B releases y of X, checks that the estimated log density ratio
// minus three jackknife standard errors never exceeds
//   (|X'|^2 - |X|^2) / (2 sigma^2) + p |y|^2 / ((n - p) sigma^4).
// The estimate is the largest observed log-ratio minus log-bound margin.
absl::StatusOr<AuditReport> DensityRatioBoundCheckBC(
    const NeighborPair& pair, double sigma, int64_t samples, uint64_t seed,
    int64_t inner_samples = kDefaultInnerSamples);

// Checks sqrt(ln(1/delta)) < gamma_delta < sqrt(2 ln(1/delta)) at `points`
// log-spaced delta in [1e-12, 0.049]. The estimate is the failure count.
AuditReport QuantileBracketSuite(int points = 50);

// Checks gamma_{delta,k} <= 2k + 3 ln(1/delta) for k in {1, 10, 100, 1e4, 1e6}
// and delta in {0.1, 0.01, 1e-6}. The estimate is the failure count.
AuditReport ChiSquareBoundSuite();

// Checks P[chi2_k >= k + 2 sqrt(k x) + 2x] <= exp(-x) for k in
// {1, 10, 100, 1000} and x in {0.01, 0.1, 1, 5, 20}. The estimate is the
// failure count.
AuditReport BirgeTailSuite();

namespace internal {

// log G for a real order q >= 1; q = 1 gives the arcsine-weighted integral.
double LogGFunctionOfOrder(double q, double t);

}  // namespace internal
}  // namespace maskdp

#endif  // MASKDP_AUDIT_H_
