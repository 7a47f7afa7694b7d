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

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "boost/math/distributions/normal.hpp"
#include "boost/math/quadrature/tanh_sinh.hpp"
#include "boost/math/special_functions/bessel.hpp"
#include "boost/math/special_functions/gamma.hpp"
#include "gtest/gtest.h"
#include "maskdp/calibration.h"
#include "maskdp/seeding.h"

namespace maskdp {
namespace {

constexpr double kPi = 3.14159265358979323846;

// log of the N(mean, sigma^2 I) density at y, up to a shared constant.
double LogGaussianKernel(const Matrix& y, const Matrix& mean, double sigma) {
  return -(y - mean).squaredNorm() / (2.0 * sigma * sigma);
}

// G_q(t) = sqrt(pi) Gamma(q/2) (2/t)^((q-1)/2) I_{(q-1)/2}(t).
double BesselG(int q, double t) {
  const double nu = 0.5 * (q - 1);
  return std::sqrt(kPi) * boost::math::tgamma(0.5 * q) *
         std::pow(2.0 / t, nu) * boost::math::cyl_bessel_i(nu, t);
}

// E[exp(s u1)] for u uniform on the unit sphere in R^n.
double BesselSphereMean(int n, double s) {
  if (s == 0.0) return 1.0;
  const double nu = 0.5 * n - 1.0;
  return boost::math::tgamma(0.5 * n) * std::pow(2.0 / s, nu) *
         boost::math::cyl_bessel_i(nu, s);
}

NeighborPair Pair(int64_t n, int64_t p, uint64_t seed = 5) {
  return *AuditNeighborPair(n, p, seed);
}

TEST(AuditNeighborPairTest, UnitDistanceInFirstRow) {
  const NeighborPair pair = Pair(5, 2);
  EXPECT_EQ(pair.row_index, 0);
  EXPECT_NEAR(pair.delta_norm, 1.0, 1e-15);
  EXPECT_EQ(pair.base.values().row(0).squaredNorm(), 0.0);
  EXPECT_EQ(pair.base.values().bottomRows(4), pair.variant.values().bottomRows(4));
}

TEST(LogDensityRatioATest, ScalarExample) {
  const DataMatrix zero = *DataMatrix::Create(Matrix::Zero(1, 1));
  const NeighborPair pair = *MakeNeighbor(zero, 0, Vector::Ones(1));
  EXPECT_NEAR(LogDensityRatioA(Matrix::Zero(1, 1), pair, 1.0), 0.5, 1e-15);
}

TEST(LogDensityRatioATest, MatchesFullDensityQuotient) {
  const NeighborPair pair = Pair(4, 3);
  Rng rng(1);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix y(4, 3);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 3; ++j) y(i, j) = normal(rng);
    }
    const double sigma = 0.7;
    const double expected =
        LogGaussianKernel(y, pair.base.values(), sigma) -
        LogGaussianKernel(y, pair.variant.values(), sigma);
    EXPECT_NEAR(LogDensityRatioA(y, pair, sigma), expected, 1e-12);
  }
}

TEST(LogDensityRatioATest, AntisymmetricAndMidpointZero) {
  const NeighborPair pair = Pair(3, 2);
  const NeighborPair swapped{pair.variant, pair.base, pair.row_index,
                             pair.delta_norm};
  Rng rng(2);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix y(3, 2);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 2; ++j) y(i, j) = normal(rng);
    }
    EXPECT_NEAR(LogDensityRatioA(y, pair, 1.3),
                -LogDensityRatioA(y, swapped, 1.3), 1e-13);
  }
  Matrix mid = pair.base.values();
  mid.row(0) = 0.5 * (pair.base.values().row(0) + pair.variant.values().row(0));
  EXPECT_NEAR(LogDensityRatioA(mid, pair, 0.9), 0.0, 1e-14);

  const NeighborPair same = *MakeNeighbor(pair.base, 1, Vector::Zero(2));
  EXPECT_EQ(LogDensityRatioA(mid, same, 0.9), 0.0);
}

TEST(ViolationAnalyticTest, MatchesGaussianTail) {
  const NeighborPair pair = Pair(2, 1);
  for (double sigma : {0.5, 2.0, 10.0}) {
    for (double eps : {0.1, 0.5, 0.9}) {
      const double t = sigma * eps - 1.0 / (2.0 * sigma);
      const double expected = boost::math::cdf(
          boost::math::complement(boost::math::normal(), t));
      EXPECT_NEAR(*ViolationProbabilityAAnalytic(pair, sigma, eps), expected,
                  1e-14 + 1e-12 * expected);
    }
  }
}

TEST(ViolationAnalyticTest, BracketedByCalibration) {
  const NeighborPair pair = Pair(2, 1);
  for (double eps : {0.1, 0.5}) {
    for (double delta : {0.01, 0.001}) {
      const PrivacyBudget budget = *PrivacyBudget::Create(eps, delta);
      EXPECT_LE(*ViolationProbabilityAAnalytic(
                    pair, *SigmaSufficientA(budget), eps),
                delta);
      EXPECT_GT(*ViolationProbabilityAAnalytic(
                    pair, *SigmaNecessaryA(budget) - 1e-6, eps),
                delta);
    }
  }
  const NeighborPair same = *MakeNeighbor(pair.base, 0, Vector::Zero(1));
  EXPECT_EQ(*ViolationProbabilityAAnalytic(same, 1.0, 0.5), 0.0);
}

TEST(ViolationMonteCarloTest, SettingAAgreesWithAnalyticOnGrid) {
  const NeighborPair pair = Pair(3, 2);
  MonteCarloOptions options;
  options.samples = 100000;
  for (double sigma : {1.0, 2.5, 6.0}) {
    for (double eps : {0.2, 0.5, 0.9}) {
      options.seed = static_cast<uint64_t>(100 * sigma + 10 * eps);
      const AuditReport report = *ViolationProbabilityMonteCarlo(
          pair, Setting::kA, sigma, eps, options);
      ASSERT_TRUE(report.analytic_reference.has_value());
      EXPECT_TRUE(report.consistent())
          << sigma << " " << eps << " " << report.estimate << " vs "
          << *report.analytic_reference;
      EXPECT_NEAR(report.std_error,
                  std::sqrt(report.estimate * (1 - report.estimate) /
                            options.samples),
                  1e-15);
    }
  }
}

TEST(ViolationMonteCarloTest, DeterministicGivenSeed) {
  const NeighborPair pair = Pair(2, 1);
  MonteCarloOptions options;
  options.samples = 5000;
  options.seed = 9;
  const AuditReport a =
      *ViolationProbabilityMonteCarlo(pair, Setting::kA, 1.0, 0.5, options);
  const AuditReport b =
      *ViolationProbabilityMonteCarlo(pair, Setting::kA, 1.0, 0.5, options);
  EXPECT_EQ(a.estimate, b.estimate);
}

TEST(ViolationMonteCarloTest, DeltaRuleFlagsUndersizedSigma) {
  const NeighborPair pair = Pair(2, 1);
  MonteCarloOptions options;
  options.samples = 20000;
  options.delta = 0.01;
  const PrivacyBudget budget = *PrivacyBudget::Create(0.5, 0.01);
  const double small = 0.5 * *SigmaNecessaryA(budget);
  const AuditReport report =
      *ViolationProbabilityMonteCarlo(pair, Setting::kA, small, 0.5, options);
  EXPECT_EQ(report.verdict, Verdict::kViolated);
}

TEST(ViolationMonteCarloTest, SettingBAtJointSigma) {
  const NeighborPair pair = Pair(4, 1);
  const PrivacyBudget budget = *PrivacyBudget::Create(0.5, 0.05);
  const double sigma =
      SigmaMaskedJoint(budget, *ProblemShape::Create(4, 1))->sigma;
  MonteCarloOptions options;
  options.samples = 200;
  options.seed = 3;
  options.delta = 0.05;
  const AuditReport report =
      *ViolationProbabilityMonteCarlo(pair, Setting::kB, sigma, 0.5, options);
  EXPECT_LE(report.estimate - 3.0 * report.std_error, 0.05);
  EXPECT_TRUE(report.consistent());
}

TEST(ViolationMonteCarloTest, SufficiencyAcrossCalibratedRows) {
  for (int64_t n : {4, 6}) {
    const NeighborPair pair = Pair(n, 1);
    for (double eps : {0.1, 0.01, 0.001}) {
      for (double delta : {0.01, 0.001}) {
        const PrivacyBudget budget = *PrivacyBudget::Create(eps, delta);
        const double sigma =
            SigmaMaskedJoint(budget, *ProblemShape::Create(n, 1))->sigma;
        for (Setting setting : {Setting::kB, Setting::kC}) {
          MonteCarloOptions options;
          options.samples = 100;
          options.inner_samples = 20000;
          options.delta = delta;
          const AuditReport report = *ViolationProbabilityMonteCarlo(
              pair, setting, sigma, eps, options);
          EXPECT_LE(report.estimate - 3.0 * report.std_error, delta)
              << n << " " << eps << " " << delta;
        }
      }
    }
  }
}

TEST(ViolationMonteCarloTest, HugeEpsilonNeverViolates) {
  const NeighborPair pair = Pair(3, 1);
  MonteCarloOptions options;
  options.samples = 100;
  options.inner_samples = 2000;
  EXPECT_EQ(
      ViolationProbabilityMonteCarlo(pair, Setting::kB, 1.0, 50.0, options)
          ->estimate,
      0.0);
  EXPECT_EQ(
      ViolationProbabilityMonteCarlo(pair, Setting::kA, 1.0, 50.0, options)
          ->estimate,
      0.0);
}

TEST(ViolationMonteCarloTest, RefusesLargeMaskedProblems) {
  MonteCarloOptions options;
  options.samples = 10;
  const absl::StatusOr<AuditReport> rows =
      ViolationProbabilityMonteCarlo(Pair(9, 1), Setting::kB, 1.0, 0.5, options);
  EXPECT_EQ(rows.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_NE(rows.status().message().find("n <= 8"), std::string::npos);
  EXPECT_EQ(
      ViolationProbabilityMonteCarlo(Pair(5, 3), Setting::kC, 1.0, 0.5, options)
          .status()
          .code(),
      absl::StatusCode::kFailedPrecondition);
  // Setting A has no such limit.
  EXPECT_TRUE(
      ViolationProbabilityMonteCarlo(Pair(50, 5), Setting::kA, 1.0, 0.5, options)
          .ok());
}

// For p = 1, A x is uniform on the sphere of radius |x|, so the Haar average
// has a Bessel closed form.
TEST(HaarPoolTest, LogRatioMatchesBesselOracle) {
  for (int n : {2, 3, 4}) {
    const NeighborPair pair = Pair(n, 1, n);
    const HaarPool pool(n, 100000, 17);
    Rng rng(n);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 5; ++trial) {
      Matrix y(n, 1);
      for (int i = 0; i < n; ++i) y(i, 0) = 1.5 * normal(rng);
      const double sigma = 1.2;
      const double s2 = sigma * sigma;
      const double x_norm = pair.base.values().norm();
      const double xp_norm = pair.variant.values().norm();
      const double y_norm = y.norm();
      const double expected =
          (xp_norm * xp_norm - x_norm * x_norm) / (2.0 * s2) +
          std::log(BesselSphereMean(n, x_norm * y_norm / s2)) -
          std::log(BesselSphereMean(n, xp_norm * y_norm / s2));
      const LogRatioEstimate est = pool.EstimateLogRatio(y, pair, sigma);
      EXPECT_GT(est.std_error, 0.0);
      EXPECT_NEAR(est.log_ratio, expected, 4.0 * est.std_error + 1e-12)
          << "n=" << n << " trial=" << trial;
    }
  }
}

TEST(HaarPoolTest, IdenticalInputsGiveZero) {
  const NeighborPair pair = Pair(4, 2);
  const NeighborPair same = *MakeNeighbor(pair.base, 0, Vector::Zero(2));
  const HaarPool pool(4, 1000, 1);
  const LogRatioEstimate est =
      pool.EstimateLogRatio(pair.base.values(), same, 1.0);
  EXPECT_EQ(est.log_ratio, 0.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(GFunctionTest, ClosedForms) {
  EXPECT_NEAR(*GFunction(2, 0.0), 2.0, 1e-13);
  EXPECT_NEAR(*GFunction(4, 0.0), 4.0 / 3.0, 1e-13);
  EXPECT_NEAR(*GFunction(3, 0.0), kPi / 2, 1e-13);
}

TEST(GFunctionTest, HighPrecisionReferenceValues) {
  EXPECT_NEAR(*GFunction(3, 2.0), 2.49856652852890441, 2.5e-12);
  EXPECT_NEAR(*GFunction(5, 1.0), 1.27939164624618223, 1.3e-12);
  EXPECT_NEAR(*GFunction(5, 3.0), 2.35118097005798072, 2.4e-12);
  EXPECT_NEAR(*GFunction(2, 0.1), 2.00333500039688, 2e-12);
  EXPECT_NEAR(*GFunction(2, 10.0), 2202.64657494067868, 2.2e-9);
  EXPECT_NEAR(*LogGFunction(10, 50.0), 36.18862771938223, 1e-9);
  EXPECT_NEAR(*LogGFunction(3, 700.0), 690.398634752661648, 1e-9);
  EXPECT_NEAR(*LogGFunction(50, 1000.0), 898.426244649181152, 1e-9);
}

TEST(GFunctionTest, MatchesTrapezoidBruteForce) {
  // G_3(2) by the trapezoid rule on 1e6 panels.
  const int panels = 1000000;
  const double h = 2.0 / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double u = -1.0 + i * h;
    const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
    sum += w * std::exp(2.0 * u) * std::sqrt(std::max(0.0, 1.0 - u * u));
  }
  const double trapezoid = sum * h;
  EXPECT_NEAR(*GFunction(3, 2.0) / trapezoid, 1.0, 1e-7);
}

TEST(GFunctionTest, MatchesBesselAndTanhSinh) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (int q : {2, 3, 4, 5, 7, 10, 21, 50}) {
    for (double t : {0.01, 0.5, 1.0, 4.0, 17.0, 60.0, 250.0, 600.0}) {
      const double bessel = BesselG(q, t);
      EXPECT_NEAR(*LogGFunction(q, t), std::log(bessel), 1e-9)
          << "q=" << q << " t=" << t;
      if (t <= 17.0) {
        const double power = 0.5 * (q - 2);
        const double quad = integrator.integrate(
            [&](double u) {
              return std::exp(t * u) * std::pow(1.0 - u * u, power);
            },
            -1.0, 1.0);
        EXPECT_NEAR(*GFunction(q, t) / quad, 1.0, 1e-9);
      }
    }
  }
}

TEST(GFunctionTest, EvenInTAndOverflowGuard) {
  EXPECT_NEAR(*LogGFunction(4, -3.0), *LogGFunction(4, 3.0), 1e-15);
  EXPECT_EQ(GFunction(3, 800.0).status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_TRUE(std::isfinite(*LogGFunction(3, 1e5)));
  EXPECT_EQ(GFunction(1, 1.0).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(GFunctionTest, LargeArgumentAsymptotics) {
  // G_q(t) ~ Gamma(q/2) 2^(q/2-1) e^t / t^(q/2) as t grows.
  for (int q : {2, 5, 10}) {
    const double t = 1e6;
    const double asymptotic = boost::math::lgamma(0.5 * q) +
                              (0.5 * q - 1) * std::log(2.0) + t -
                              0.5 * q * std::log(t);
    EXPECT_NEAR(*LogGFunction(q, t), asymptotic, 1e-4) << q;
  }
}

TEST(GFunctionTest, MonotoneOnGrid) {
  for (int q : {2, 3, 5, 10, 50}) {
    double previous = -INFINITY;
    for (double t = 0.05; t <= 50.0; t += 0.05) {
      const double log_g = *LogGFunction(q, t);
      EXPECT_GT(log_g, previous) << "q=" << q << " t=" << t;
      previous = log_g;
    }
  }
}

TEST(GRatioBoundCheckTest, StatedCases) {
  const AuditReport a = *GRatioBoundCheck(5, 1.0, 3.0);
  EXPECT_TRUE(a.consistent());
  EXPECT_LE(a.estimate, 0.8);
  EXPECT_DOUBLE_EQ(*a.bound_reference, 0.8);
  const AuditReport same = *GRatioBoundCheck(4, 2.0, 2.0);
  EXPECT_EQ(same.estimate, 0.0);
  EXPECT_TRUE(same.consistent());
  EXPECT_TRUE(GRatioBoundCheck(2, 0.1, 10.0)->consistent());
  EXPECT_FALSE(GRatioBoundCheck(3, 0.0, 1.0).ok());
}

TEST(GRatioBoundCheckTest, DerivativeInequalityAtRandomPoints) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uniform(0.05, 50.0);
  for (int q : {2, 3, 5, 10, 50}) {
    for (int i = 0; i < 20; ++i) {
      const double t = uniform(rng);
      const AuditReport r = *GRatioBoundCheck(q, 0.8 * t, 1.2 * t);
      EXPECT_TRUE(r.consistent()) << "q=" << q << " t=" << t;
      // Independent check: G'/G from the Bessel form.
      const double h = 1e-5 * t;
      const double d =
          (std::log(BesselG(q, t + h)) - std::log(BesselG(q, t - h))) / (2 * h);
      EXPECT_GT(d, 0.0);
      EXPECT_LT(d, t / q);
    }
  }
}

TEST(SphereProjectionIntegralTest, ClosedForms) {
  EXPECT_NEAR(*SphereProjectionIntegral(3, 2.0), 1.8134302039235095, 1e-12);
  for (double s : {0.3, 1.0, 5.0}) {
    EXPECT_NEAR(*SphereProjectionIntegral(3, s), std::sinh(s) / s,
                1e-12 * std::sinh(s) / s);
    for (int q : {2, 4, 9, 30}) {
      EXPECT_NEAR(*SphereProjectionIntegral(q, s), BesselSphereMean(q, s),
                  1e-10 * BesselSphereMean(q, s))
          << q << " " << s;
    }
  }
  EXPECT_NEAR(*SphereProjectionIntegral(5, 0.0), 1.0, 1e-13);
}

TEST(SphereIntegralCheckTest, OrthogonalVectorGivesOne) {
  const int n = 6;
  const int q = 3;
  const uint64_t seed = 21;
  Rng rng = MakeRng(seed, Stream::kSubspace);
  const Matrix haar = internal::DrawHaar(n, rng);
  const Vector v = 2.0 * haar.col(q);
  const AuditReport r = *SphereIntegralCheck(n, q, v, seed, 2000);
  EXPECT_NEAR(*r.analytic_reference, 1.0, 1e-12);
  EXPECT_NEAR(r.estimate, 1.0, 1e-12);
  EXPECT_TRUE(r.consistent());
}

TEST(SphereIntegralCheckTest, RandomConfigurations) {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 20);
    const int q = 2 + static_cast<int>(rng() % (n - 1));
    std::normal_distribution<double> normal;
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    const AuditReport r = *SphereIntegralCheck(n, q, v, 1000 + trial);
    EXPECT_TRUE(r.consistent())
        << "n=" << n << " q=" << q << " mc=" << r.estimate
        << " quad=" << *r.analytic_reference << " se=" << r.std_error;
    ++checked;
  }
  EXPECT_EQ(checked, 10);
  const Vector v8 = Vector::LinSpaced(8, -1.0, 1.0);
  EXPECT_TRUE(SphereIntegralCheck(8, 4, v8, 3)->consistent());
}

TEST(SphereIntegralCheckTest, Preconditions) {
  EXPECT_EQ(SphereIntegralCheck(3, 4, Vector::Zero(3), 1).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(SphereIntegralCheck(40, 3, Vector::Zero(40), 1).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(SphereIntegralCheck(5, 3, Vector::Zero(4), 1).ok());
}

TEST(DensityRatioBoundCheckTest, HoldsAtDeskScale) {
  const AuditReport r = *DensityRatioBoundCheckBC(Pair(4, 1), 4.0, 200, 6);
  EXPECT_TRUE(r.consistent());
  EXPECT_EQ(r.samples, 200);
}

TEST(DensityRatioBoundCheckTest, IdenticalInputsStayBelowBound) {
  const NeighborPair pair = Pair(4, 2);
  const NeighborPair same = *MakeNeighbor(pair.base, 0, Vector::Zero(2));
  const AuditReport r = *DensityRatioBoundCheckBC(same, 1.0, 50, 2, 1000);
  EXPECT_TRUE(r.consistent());
  EXPECT_LE(r.estimate, 0.0);
}

TEST(DensityRatioBoundCheckTest, RefusesBeyondSixRows) {
  const absl::StatusOr<AuditReport> r =
      DensityRatioBoundCheckBC(Pair(7, 1), 4.0, 10, 1);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(SuiteTest, ChiSquareAndBirgeSuitesPass) {
  const AuditReport chi = ChiSquareBoundSuite();
  EXPECT_TRUE(chi.consistent());
  EXPECT_EQ(chi.samples, 15);
  const AuditReport birge = BirgeTailSuite();
  EXPECT_TRUE(birge.consistent());
  EXPECT_EQ(birge.samples, 20);
}

TEST(SuiteTest, QuantileBracketSuiteCountsFailuresFaithfully) {
  const int points = 50;
  int expected_failures = 0;
  for (int k = 0; k < points; ++k) {
    const double delta = std::exp(std::log(1e-12) + (std::log(0.049) -
                                                     std::log(1e-12)) *
                                                        k / (points - 1));
    const double exact = boost::math::quantile(
        boost::math::complement(boost::math::normal(), delta));
    const double l = std::log(1.0 / delta);
    if (!(std::sqrt(l) < exact && exact < std::sqrt(2.0 * l))) {
      ++expected_failures;
    }
  }
  const AuditReport report = QuantileBracketSuite(points);
  EXPECT_EQ(report.estimate, expected_failures);
  EXPECT_EQ(report.consistent(), expected_failures == 0);
}

}  // namespace
}  // namespace maskdp
