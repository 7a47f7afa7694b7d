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

#include "maskdp/quantiles.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "maskdp/special_functions.h"

namespace maskdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTinyFloat = 1e-300;

// Beyond this point erfc underflows and the asymptotic tail series is used.
constexpr double kGaussianAsymptoticCutoff = 35.0;

absl::Status ValidateTailProbability(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  return absl::OkStatus();
}

double MaxIterations(double a) { return 1000.0 + 20.0 * std::sqrt(a); }

// log P(a, x) by the power series; accurate for x < a + 1.
double LogGammaPSeries(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  const double max_iter = MaxIterations(a);
  for (double n = 1; n < max_iter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::log(sum) + a * std::log(x) - x - LogGamma(a);
}

// log Q(a, x) by the modified Lentz continued fraction; for x >= a + 1.
double LogGammaQContinuedFraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTinyFloat;
  double d = 1.0 / b;
  double h = d;
  const double max_iter = MaxIterations(a);
  for (double i = 1; i < max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTinyFloat) d = kTinyFloat;
    c = b + an / c;
    if (std::fabs(c) < kTinyFloat) c = kTinyFloat;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::log(h) + a * std::log(x) - x - LogGamma(a);
}

// Finds the root of a strictly decreasing function g on [lo, hi], with
// g(lo) > 0 > g(hi). Bisects until the bracket is narrow, then switches to
// Newton steps that fall back to bisection whenever they leave the bracket.
template <typename Fn, typename Deriv>
double SolveDecreasing(Fn g, Deriv dg, double lo, double hi, double rel_tol,
                       double abs_tol) {
  auto tolerance = [&](double x) {
    return std::max(abs_tol, rel_tol * std::fabs(x));
  };
  while (hi - lo > 1e-2 * (1.0 + std::fabs(lo + hi) / 2)) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double gx = g(x);
    if (gx == 0.0) return x;
    (gx > 0 ? lo : hi) = x;
    double next = x - gx / dg(x);
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
    }
    if (std::fabs(next - x) <= tolerance(next) ||
        hi - lo <= tolerance(next)) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace

double LogRegularizedGammaP(double a, double x) {
  if (x <= 0.0) return -kInf;
  if (x < a + 1.0) return LogGammaPSeries(a, x);
  return std::log1p(-std::exp(LogGammaQContinuedFraction(a, x)));
}

double LogRegularizedGammaQ(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return std::log1p(-std::exp(LogGammaPSeries(a, x)));
  return LogGammaQContinuedFraction(a, x);
}

double RegularizedGammaP(double a, double x) {
  return std::exp(LogRegularizedGammaP(a, x));
}

double RegularizedGammaQ(double a, double x) {
  return std::exp(LogRegularizedGammaQ(a, x));
}

double LogGaussianDensity(double t) {
  return -0.5 * t * t - 0.5 * std::log(2.0 * std::numbers::pi);
}

double LogGaussianSurvival(double t) {
  if (t < 0.0) {
    return std::log1p(-0.5 * std::erfc(-t / std::numbers::sqrt2));
  }
  if (t < kGaussianAsymptoticCutoff) {
    return std::log(0.5 * std::erfc(t / std::numbers::sqrt2));
  }
  // Mills ratio expansion.
  const double inv2 = 1.0 / (t * t);
  const double series =
      1.0 - inv2 * (1.0 - 3.0 * inv2 * (1.0 - 5.0 * inv2 * (1.0 - 7.0 * inv2)));
  return LogGaussianDensity(t) - std::log(t) + std::log(series);
}

double GaussianSurvival(double t) {
  return 0.5 * std::erfc(t / std::numbers::sqrt2);
}

double LogChiSquareSurvival(double x, double dof) {
  return LogRegularizedGammaQ(0.5 * dof, 0.5 * x);
}

double ChiSquareSurvival(double x, double dof) {
  return std::exp(LogChiSquareSurvival(x, dof));
}

double LogChiSquareDensity(double x, double dof) {
  const double k = 0.5 * dof;
  if (x <= 0.0) {
    if (dof < 2.0) return kInf;
    if (dof == 2.0) return std::log(0.5);
    return -kInf;
  }
  return (k - 1.0) * std::log(x) - 0.5 * x - k * std::numbers::ln2 -
         LogGamma(k);
}

absl::StatusOr<double> GaussianUpperQuantile(double delta) {
  if (absl::Status s = ValidateTailProbability(delta); !s.ok()) return s;
  const double log_delta = std::log(delta);
  auto g = [log_delta](double t) { return LogGaussianSurvival(t) - log_delta; };
  auto dg = [](double t) {
    return -std::exp(LogGaussianDensity(t) - LogGaussianSurvival(t));
  };
  double lo = -1.0;
  double hi = 1.0;
  while (g(hi) > 0) {
    lo = hi;
    hi *= 2.0;
  }
  while (g(lo) < 0) {
    hi = lo;
    lo *= 2.0;
  }
  return SolveDecreasing(g, dg, lo, hi, 1e-15, 1e-14);
}

absl::StatusOr<QuantileBracket> GaussianQuantileBracket(double delta) {
  if (absl::Status s = ValidateTailProbability(delta); !s.ok()) return s;
  if (delta >= 0.05) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "the Gaussian quantile bracket requires delta < 0.05, got %g", delta));
  }
  absl::StatusOr<double> exact = GaussianUpperQuantile(delta);
  if (!exact.ok()) return exact.status();
  const double log_inv = -std::log(delta);
  return QuantileBracket{.lower = std::sqrt(log_inv),
                         .exact = *exact,
                         .upper = std::sqrt(2.0 * log_inv)};
}

absl::StatusOr<double> ChiSquareUpperQuantile(double delta, int64_t dof) {
  if (absl::Status s = ValidateTailProbability(delta); !s.ok()) return s;
  if (dof < 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "chi-square degrees of freedom must be positive, got %d", dof));
  }
  const double k = static_cast<double>(dof);
  const double log_delta = std::log(delta);
  auto g = [&](double x) { return LogChiSquareSurvival(x, k) - log_delta; };
  auto dg = [&](double x) {
    return -std::exp(LogChiSquareDensity(x, k) - LogChiSquareSurvival(x, k));
  };

  if (k > kWilsonHilfertyDof) {
    absl::StatusOr<double> z = GaussianUpperQuantile(delta);
    if (!z.ok()) return z.status();
    const double h = 2.0 / (9.0 * k);
    double x = k * std::pow(1.0 - h + *z * std::sqrt(h), 3);
    for (int step = 0; step < 2; ++step) x -= g(x) / dg(x);
    return x;
  }

  // The chi-square tail inequality puts the quantile below this point.
  const double log_inv = -log_delta;
  double hi = k + 2.0 * std::sqrt(k * log_inv) + 2.0 * log_inv + 1.0;
  double lo = 0.0;
  while (g(hi) > 0) {
    lo = hi;
    hi *= 2.0;
  }
  return SolveDecreasing(g, dg, lo, hi, 1e-14, 1e-300);
}

absl::StatusOr<double> ChiSquareQuantileBound(double delta, int64_t dof) {
  if (absl::Status s = ValidateTailProbability(delta); !s.ok()) return s;
  if (dof < 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "chi-square degrees of freedom must be positive, got %d", dof));
  }
  return 2.0 * static_cast<double>(dof) - 3.0 * std::log(delta);
}

absl::StatusOr<BirgeTail> BirgeTailCheck(int64_t dof, double x) {
  if (dof < 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "chi-square degrees of freedom must be positive, got %d", dof));
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("tail offset x must be positive, got %g", x));
  }
  const double k = static_cast<double>(dof);
  const double threshold = k + 2.0 * std::sqrt(k * x) + 2.0 * x;
  return BirgeTail{.bound_prob = std::exp(-x),
                   .tail_prob = ChiSquareSurvival(threshold, k)};
}

}  // namespace maskdp
