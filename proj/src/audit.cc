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

#include "maskdp/audit.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "maskdp/quantiles.h"
#include "maskdp/special_functions.h"
#include "maskdp/stats.h"

namespace maskdp {
namespace {

constexpr int64_t kChunkSize = 1024;
constexpr double kLogOverflow = 709.0;
// Integration window: the log integrand is kept within this many nats of its
// peak.
constexpr double kWindowNats = 50.0;

absl::Status ValidateSigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sigma must be positive and finite, got %g", sigma));
  }
  return absl::OkStatus();
}

absl::Status ValidateMaskedScale(const NeighborPair& pair, int64_t max_rows) {
  const int64_t n = pair.base.rows();
  const int64_t p = pair.base.cols();
  if (n > max_rows || p > kMaxAuditCols) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "nested Haar Monte Carlo is limited to n <= %d and p <= %d (got "
        "%d x %d); audit setting A or rely on the calibration bounds for "
        "larger problems",
        max_rows, kMaxAuditCols, n, p));
  }
  if (n <= p) {
    return absl::InvalidArgumentError("masked-setting audits need n > p");
  }
  return absl::OkStatus();
}

// Runs fn(chunk, begin, end) over fixed-size chunks of [0, total). Chunk
// boundaries and seeds depend only on the chunk index, so results do not
// depend on the number of worker threads.
template <typename Partial, typename Fn>
std::vector<Partial> RunChunks(int64_t total, Fn fn) {
  const int64_t chunks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<Partial> results(chunks);
  std::atomic<int64_t> next{0};
  auto work = [&] {
    for (int64_t c = next++; c < chunks; c = next++) {
      results[c] =
          fn(c, c * kChunkSize, std::min(total, (c + 1) * kChunkSize));
    }
  };
  const int64_t workers = std::min<int64_t>(
      chunks, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int64_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return results;
}

// Leave-one-out jackknife for log(mean exp a) - log(mean exp b) with paired
// samples.
LogRatioEstimate JackknifeLogMeanExpRatio(const Eigen::VectorXd& a,
                                          const Eigen::VectorXd& b) {
  const int64_t m = a.size();
  const double a_max = a.maxCoeff();
  const double b_max = b.maxCoeff();
  const Eigen::ArrayXd wa = (a.array() - a_max).exp();
  const Eigen::ArrayXd wb = (b.array() - b_max).exp();
  const double sa = wa.sum();
  const double sb = wb.sum();
  const double full = (a_max + std::log(sa)) - (b_max + std::log(sb));
  if (m < 2) return {full, 0.0};

  constexpr double kFloor = std::numeric_limits<double>::min();
  Eigen::ArrayXd loo(m);
  for (int64_t i = 0; i < m; ++i) {
    loo[i] = std::log(std::max(sa - wa[i], kFloor)) -
             std::log(std::max(sb - wb[i], kFloor));
  }
  const double mean = loo.mean();
  const double var =
      (static_cast<double>(m - 1) / m) * (loo - mean).square().sum();
  return {full, std::sqrt(var)};
}

double LogNormGap(const NeighborPair& pair, double sigma) {
  return (pair.variant.values().squaredNorm() -
          pair.base.values().squaredNorm()) /
         (2.0 * sigma * sigma);
}

std::string MonteCarloRule(bool analytic, bool bound) {
  std::string rule = "consistent iff";
  if (analytic) {
    rule += " |estimate - analytic_reference| <= 3 * sqrt(ref * (1 - ref) / "
            "samples)";
  }
  if (analytic && bound) rule += " and";
  if (bound) rule += " estimate - 3 * std_error <= bound_reference";
  if (!analytic && !bound) rule += " always (no reference supplied)";
  return rule;
}

}  // namespace

std::string VerdictName(Verdict verdict) {
  return verdict == Verdict::kConsistent ? "consistent" : "violated";
}

absl::StatusOr<NeighborPair> AuditNeighborPair(int64_t n, int64_t p,
                                               uint64_t seed) {
  if (n < 1 || p < 1) {
    return absl::InvalidArgumentError("audit pair needs n >= 1 and p >= 1");
  }
  Rng rng = MakeRng(seed, Stream::kAuditData);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Matrix values(n, p);
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < p; ++j) values(i, j) = i == 0 ? 0.0 : uniform(rng);
  }
  absl::StatusOr<DataMatrix> base = DataMatrix::Create(std::move(values));
  if (!base.ok()) return base.status();
  return MakeNeighbor(*base, 0,
                      Vector::Constant(p, 1.0 / std::sqrt(static_cast<double>(p))));
}

double LogDensityRatioA(const Matrix& y, const NeighborPair& pair,
                        double sigma) {
  const int64_t r = pair.row_index;
  const Eigen::RowVectorXd x_row = pair.base.values().row(r);
  const Eigen::RowVectorXd diff = pair.variant.values().row(r) - x_row;
  const double s2 = sigma * sigma;
  return (diff.squaredNorm() + 2.0 * x_row.dot(diff)) / (2.0 * s2) -
         y.row(r).dot(diff) / s2;
}

absl::StatusOr<double> ViolationProbabilityAAnalytic(const NeighborPair& pair,
                                                     double sigma,
                                                     double epsilon) {
  if (absl::Status s = ValidateSigma(sigma); !s.ok()) return s;
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  const double norm = pair.delta_norm;
  if (norm == 0.0) return 0.0;
  return GaussianSurvival(sigma * epsilon / norm - norm / (2.0 * sigma));
}

HaarPool::HaarPool(int64_t n, int64_t size, uint64_t seed) : n_(n) {
  flattened_.resize(size, n * n);
  Rng rng = MakeRng(seed, Stream::kAuditInner);
  for (int64_t m = 0; m < size; ++m) {
    const Matrix a = internal::DrawHaar(n, rng);
    flattened_.row(m) = Eigen::Map<const Eigen::RowVectorXd>(a.data(), n * n);
  }
}

LogRatioEstimate HaarPool::EstimateLogRatio(const Matrix& y,
                                            const NeighborPair& pair,
                                            double sigma) const {
  // tr(A y X^T) = <A, X y^T> entrywise.
  const double s2 = sigma * sigma;
  const Matrix base_t = pair.base.values() * y.transpose() / s2;
  const Matrix variant_t = pair.variant.values() * y.transpose() / s2;
  Eigen::MatrixXd rhs(n_ * n_, 2);
  rhs.col(0) = Eigen::Map<const Eigen::VectorXd>(base_t.data(), n_ * n_);
  rhs.col(1) = Eigen::Map<const Eigen::VectorXd>(variant_t.data(), n_ * n_);
  const Eigen::MatrixXd scores = flattened_ * rhs;
  LogRatioEstimate estimate =
      JackknifeLogMeanExpRatio(scores.col(0), scores.col(1));
  estimate.log_ratio += LogNormGap(pair, sigma);
  return estimate;
}

absl::StatusOr<AuditReport> ViolationProbabilityMonteCarlo(
    const NeighborPair& pair, Setting setting, double sigma, double epsilon,
    const MonteCarloOptions& options) {
  if (absl::Status s = ValidateSigma(sigma); !s.ok()) return s;
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (options.samples < 1) {
    return absl::InvalidArgumentError("samples must be positive");
  }
  std::optional<HaarPool> pool;
  if (setting != Setting::kA) {
    if (absl::Status s = ValidateMaskedScale(pair, kMaxAuditRows); !s.ok()) {
      return s;
    }
    if (options.inner_samples < 2) {
      return absl::InvalidArgumentError("inner_samples must be at least 2");
    }
    pool.emplace(pair.base.rows(), options.inner_samples, options.seed);
  }

  const Matrix& x = pair.base.values();
  std::vector<int64_t> counts = RunChunks<int64_t>(
      options.samples, [&](int64_t chunk, int64_t begin, int64_t end) {
        Rng masking_rng = MakeRng(options.seed, Stream::kAuditOuter, 2 * chunk);
        Rng noise_rng =
            MakeRng(options.seed, Stream::kAuditOuter, 2 * chunk + 1);
        int64_t hits = 0;
        for (int64_t i = begin; i < end; ++i) {
          const Matrix y =
              internal::DrawRelease(x, setting, sigma, masking_rng, noise_rng);
          const double log_ratio =
              setting == Setting::kA
                  ? LogDensityRatioA(y, pair, sigma)
                  : pool->EstimateLogRatio(y, pair, sigma).log_ratio;
          if (log_ratio > epsilon) ++hits;
        }
        return hits;
      });

  int64_t hits = 0;
  for (int64_t c : counts) hits += c;
  AuditReport report;
  report.samples = options.samples;
  report.estimate = static_cast<double>(hits) / options.samples;
  report.std_error = BinomialStdError(report.estimate, options.samples);
  report.bound_reference = options.delta;
  if (setting == Setting::kA) {
    absl::StatusOr<double> analytic =
        ViolationProbabilityAAnalytic(pair, sigma, epsilon);
    if (!analytic.ok()) return analytic.status();
    report.analytic_reference = *analytic;
  } else {
    report.details.emplace_back("inner_samples",
                                static_cast<double>(options.inner_samples));
  }
  report.details.emplace_back("violations", static_cast<double>(hits));

  bool consistent = true;
  if (report.analytic_reference.has_value()) {
    const double ref = *report.analytic_reference;
    const double ref_se = BinomialStdError(ref, options.samples);
    consistent &=
        std::fabs(report.estimate - ref) <= kVerdictStdErrors * ref_se;
  }
  if (report.bound_reference.has_value()) {
    consistent &= report.estimate - kVerdictStdErrors * report.std_error <=
                  *report.bound_reference;
  }
  report.verdict = consistent ? Verdict::kConsistent : Verdict::kViolated;
  report.rule = MonteCarloRule(report.analytic_reference.has_value(),
                               report.bound_reference.has_value());
  return report;
}

namespace internal {

// With phi = pi/2 - asin(u) and a = |t|,
//   G_q(t) = e^a int_0^pi exp(-2a sin^2(phi/2)) sin^(q-1)(phi) dphi.
// The integrand is unimodal; its peak has a closed form, and integration is
// restricted to the window within kWindowNats of it, with the peak factored
// out. For large a this zooms onto the O(1/sqrt(a)) neighbourhood of u = 1.
double LogGFunctionOfOrder(double q, double t) {
  const double a = std::fabs(t);
  const double power = q - 1.0;
  auto log_integrand = [a, power](double phi) {
    const double h = std::sin(0.5 * phi);
    double v = -2.0 * a * h * h;
    if (power != 0.0) v += power * std::log(std::sin(phi));
    return v;
  };

  double peak;
  if (a == 0.0) {
    peak = std::numbers::pi / 2;
  } else {
    const double c =
        (-power + std::sqrt(power * power + 4.0 * a * a)) / (2.0 * a);
    peak = std::acos(std::clamp(c, -1.0, 1.0));
  }
  const double log_peak = power == 0.0 && peak == 0.0 ? 0.0
                                                      : log_integrand(peak);
  const double cutoff = log_peak - kWindowNats;

  auto find_edge = [&](double inside, double outside) {
    if (log_integrand(outside) >= cutoff) return outside;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (inside + outside);
      (log_integrand(mid) >= cutoff ? inside : outside) = mid;
    }
    return outside;
  };
  const double lo = power == 0.0 ? 0.0 : find_edge(peak, 0.0);
  const double hi = find_edge(peak, std::numbers::pi);

  const double integral = IntegrateAdaptive(
      [&](double phi) { return std::exp(log_integrand(phi) - log_peak); }, lo,
      hi, 1e-13);
  return a + log_peak + std::log(integral);
}

}  // namespace internal

absl::StatusOr<double> LogGFunction(int q, double t) {
  if (q < 2) {
    return absl::InvalidArgumentError(
        absl::StrFormat("G_q needs q >= 2, got %d", q));
  }
  if (!std::isfinite(t)) {
    return absl::InvalidArgumentError("t must be finite");
  }
  return internal::LogGFunctionOfOrder(q, t);
}

absl::StatusOr<double> GFunction(int q, double t) {
  absl::StatusOr<double> log_g = LogGFunction(q, t);
  if (!log_g.ok()) return log_g.status();
  if (*log_g > kLogOverflow) {
    return absl::OutOfRangeError(absl::StrFormat(
        "G_%d(%g) overflows a double; use LogGFunction", q, t));
  }
  return std::exp(*log_g);
}

absl::StatusOr<double> SphereProjectionIntegral(int q, double s) {
  if (q < 2) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sphere dimension q must be >= 2, got %d", q));
  }
  const double log_norm = 0.5 * std::log(std::numbers::pi) +
                          LogGamma(0.5 * (q - 1)) - LogGamma(0.5 * q);
  const double log_value = internal::LogGFunctionOfOrder(q - 1, s) - log_norm;
  if (log_value > kLogOverflow) {
    return absl::OutOfRangeError("sphere projection integral overflows");
  }
  return std::exp(log_value);
}

absl::StatusOr<AuditReport> GRatioBoundCheck(int q, double t1, double t2) {
  if (q < 2) {
    return absl::InvalidArgumentError(
        absl::StrFormat("G_q needs q >= 2, got %d", q));
  }
  if (!(t1 > 0.0 && t2 > 0.0)) {
    return absl::InvalidArgumentError("t1 and t2 must be positive");
  }
  const double log_ratio = internal::LogGFunctionOfOrder(q, t2) -
                           internal::LogGFunctionOfOrder(q, t1);
  const double log_bound = std::fabs(t1 * t1 - t2 * t2) / (2.0 * q);

  const double mid = 0.5 * (t1 + t2);
  const double h = 1e-4 * std::max(1.0, mid);
  const double log_derivative = (internal::LogGFunctionOfOrder(q, mid + h) -
                                 internal::LogGFunctionOfOrder(q, mid - h)) /
                                (2.0 * h);
  const double derivative_cap = mid / q;

  AuditReport report;
  report.estimate = log_ratio;
  report.bound_reference = log_bound;
  report.samples = 0;
  report.rule =
      "consistent iff log(G(t2)/G(t1)) <= |t1^2 - t2^2| / (2q) (+1e-12 "
      "rounding slack) and 0 < G'(t)/G(t) < t/q at t = (t1 + t2) / 2";
  report.details = {{"t_mid", mid},
                    {"log_derivative", log_derivative},
                    {"log_derivative_upper", derivative_cap}};
  const bool ratio_ok =
      log_ratio <= log_bound + 1e-12 * std::max(1.0, log_bound);
  const bool derivative_ok =
      log_derivative > 0.0 && log_derivative < derivative_cap;
  report.verdict =
      ratio_ok && derivative_ok ? Verdict::kConsistent : Verdict::kViolated;
  return report;
}

absl::StatusOr<AuditReport> SphereIntegralCheck(int n, int q, const Vector& v,
                                                uint64_t subspace_seed,
                                                int64_t samples) {
  if (q < 2) {
    return absl::InvalidArgumentError("subspace dimension q must be >= 2");
  }
  if (q > n) {
    return absl::InvalidArgumentError(
        absl::StrFormat("subspace dimension q = %d exceeds n = %d", q, n));
  }
  if (n > kMaxSphereDimension) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "sphere check is limited to n <= %d", kMaxSphereDimension));
  }
  if (v.size() != n) {
    return absl::InvalidArgumentError("v must have n entries");
  }
  if (samples < 2) {
    return absl::InvalidArgumentError("samples must be at least 2");
  }

  Rng subspace_rng = MakeRng(subspace_seed, Stream::kSubspace);
  const Eigen::MatrixXd frame =
      internal::DrawHaar(n, subspace_rng).leftCols(q);
  const double projection_norm = (frame.transpose() * v).norm();
  absl::StatusOr<double> quadrature =
      SphereProjectionIntegral(q, projection_norm);
  if (!quadrature.ok()) return quadrature.status();

  Rng sphere_rng = MakeRng(subspace_seed, Stream::kSphere);
  std::normal_distribution<double> normal;
  std::vector<double> values(samples);
  Eigen::VectorXd g(q);
  for (int64_t i = 0; i < samples; ++i) {
    for (int j = 0; j < q; ++j) g[j] = normal(sphere_rng);
    const Eigen::VectorXd b = frame * (g / g.norm());
    values[i] = std::exp(b.dot(v));
  }
  const MeanEstimate mc = MeanWithStdError(values);

  AuditReport report;
  report.estimate = mc.mean;
  report.std_error = mc.std_error;
  report.analytic_reference = *quadrature;
  report.samples = samples;
  report.details = {{"projection_norm", projection_norm}};
  report.rule =
      "consistent iff |estimate - analytic_reference| <= 3 * std_error + "
      "1e-12 * analytic_reference";
  report.verdict = std::fabs(mc.mean - *quadrature) <=
                           kVerdictStdErrors * mc.std_error +
                               1e-12 * std::fabs(*quadrature)
                       ? Verdict::kConsistent
                       : Verdict::kViolated;
  return report;
}

absl::StatusOr<AuditReport> DensityRatioBoundCheckBC(const NeighborPair& pair,
                                                     double sigma,
                                                     int64_t samples,
                                                     uint64_t seed,
                                                     int64_t inner_samples) {
  if (absl::Status s = ValidateSigma(sigma); !s.ok()) return s;
  if (absl::Status s = ValidateMaskedScale(pair, kMaxRatioBoundRows);
      !s.ok()) {
    return s;
  }
  if (samples < 1 || inner_samples < 2) {
    return absl::InvalidArgumentError(
        "need samples >= 1 and inner_samples >= 2");
  }
  const int64_t n = pair.base.rows();
  const int64_t p = pair.base.cols();
  const HaarPool pool(n, inner_samples, seed);
  const double norm_gap = LogNormGap(pair, sigma);
  const double s4 = sigma * sigma * sigma * sigma;

  struct Partial {
    int64_t exceedances = 0;
    double worst_margin = -std::numeric_limits<double>::infinity();
    double worst_std_error = 0.0;
  };
  std::vector<Partial> partials = RunChunks<Partial>(
      samples, [&](int64_t chunk, int64_t begin, int64_t end) {
        Rng masking_rng = MakeRng(seed, Stream::kAuditOuter, 2 * chunk);
        Rng noise_rng = MakeRng(seed, Stream::kAuditOuter, 2 * chunk + 1);
        Partial partial;
        for (int64_t i = begin; i < end; ++i) {
          const Matrix y = internal::DrawRelease(
              pair.base.values(), Setting::kB, sigma, masking_rng, noise_rng);
          const LogRatioEstimate est = pool.EstimateLogRatio(y, pair, sigma);
          const double log_bound =
              norm_gap + p * y.squaredNorm() / ((n - p) * s4);
          const double margin = est.log_ratio - log_bound;
          if (margin - kVerdictStdErrors * est.std_error > 0.0) {
            ++partial.exceedances;
          }
          if (margin > partial.worst_margin) {
            partial.worst_margin = margin;
            partial.worst_std_error = est.std_error;
          }
        }
        return partial;
      });

  Partial total;
  for (const Partial& part : partials) {
    total.exceedances += part.exceedances;
    if (part.worst_margin > total.worst_margin) {
      total.worst_margin = part.worst_margin;
      total.worst_std_error = part.worst_std_error;
    }
  }
  AuditReport report;
  report.estimate = total.worst_margin;
  report.std_error = total.worst_std_error;
  report.bound_reference = 0.0;
  report.samples = samples;
  report.details = {{"exceedances", static_cast<double>(total.exceedances)},
                    {"inner_samples", static_cast<double>(inner_samples)}};
  report.rule =
      "estimate is max over samples of (log ratio - log bound); consistent "
      "iff no sample has log ratio - 3 * jackknife SE > log bound";
  report.verdict = total.exceedances == 0 ? Verdict::kConsistent
                                          : Verdict::kViolated;
  return report;
}

AuditReport QuantileBracketSuite(int points) {
  AuditReport report;
  report.samples = points;
  report.bound_reference = 0.0;
  report.rule = "consistent iff every grid point has lower < exact < upper";
  double min_lower_gap = std::numeric_limits<double>::infinity();
  double min_upper_gap = std::numeric_limits<double>::infinity();
  int failures = 0;
  double first_failure = std::numeric_limits<double>::quiet_NaN();
  const double log_lo = std::log(1e-12);
  const double log_hi = std::log(0.049);
  for (int k = 0; k < points; ++k) {
    const double frac = points > 1 ? static_cast<double>(k) / (points - 1) : 0;
    const double delta = std::exp(log_lo + frac * (log_hi - log_lo));
    absl::StatusOr<QuantileBracket> bracket = GaussianQuantileBracket(delta);
    if (!bracket.ok() || !(bracket->lower < bracket->exact &&
                           bracket->exact < bracket->upper)) {
      if (failures++ == 0) first_failure = delta;
      continue;
    }
    min_lower_gap = std::min(min_lower_gap, bracket->exact - bracket->lower);
    min_upper_gap = std::min(min_upper_gap, bracket->upper - bracket->exact);
  }
  report.estimate = failures;
  report.details = {{"min_exact_minus_lower", min_lower_gap},
                    {"min_upper_minus_exact", min_upper_gap}};
  if (failures > 0) {
    report.details.emplace_back("first_failed_delta", first_failure);
  }
  report.verdict = failures == 0 ? Verdict::kConsistent : Verdict::kViolated;
  return report;
}

AuditReport ChiSquareBoundSuite() {
  AuditReport report;
  report.bound_reference = 0.0;
  report.rule = "consistent iff the quantile never exceeds 2k + 3 ln(1/delta)";
  int failures = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int64_t dof : {1, 10, 100, 10000, 1000000}) {
    for (double delta : {0.1, 0.01, 1e-6}) {
      ++report.samples;
      absl::StatusOr<double> quantile = ChiSquareUpperQuantile(delta, dof);
      absl::StatusOr<double> bound = ChiSquareQuantileBound(delta, dof);
      if (!quantile.ok() || !bound.ok() || !(*quantile <= *bound)) {
        ++failures;
        continue;
      }
      min_slack = std::min(min_slack, *bound - *quantile);
    }
  }
  report.estimate = failures;
  report.details = {{"min_bound_minus_quantile", min_slack}};
  report.verdict = failures == 0 ? Verdict::kConsistent : Verdict::kViolated;
  return report;
}

AuditReport BirgeTailSuite() {
  AuditReport report;
  report.bound_reference = 0.0;
  report.rule = "consistent iff tail_prob <= exp(-x) at every grid point";
  int failures = 0;
  double max_ratio = 0.0;
  for (int64_t dof : {1, 10, 100, 1000}) {
    for (double x : {0.01, 0.1, 1.0, 5.0, 20.0}) {
      ++report.samples;
      absl::StatusOr<BirgeTail> tail = BirgeTailCheck(dof, x);
      if (!tail.ok() || !tail->holds()) {
        ++failures;
        continue;
      }
      max_ratio = std::max(max_ratio, tail->tail_prob / tail->bound_prob);
    }
  }
  report.estimate = failures;
  report.details = {{"max_tail_over_bound", max_ratio}};
  report.verdict = failures == 0 ? Verdict::kConsistent : Verdict::kViolated;
  return report;
}

}  // namespace maskdp
