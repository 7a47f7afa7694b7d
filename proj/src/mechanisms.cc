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

#include "maskdp/mechanisms.h"

#include <cmath>
#include <random>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace maskdp {
namespace {

// Slack on the unit neighbor-norm check for vectors such as (0.6, 0.8) whose
// squared norm rounds just above one.
constexpr double kNormSlack = 1e-12;

absl::Status ValidateSigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sigma must be positive and finite, got %g", sigma));
  }
  return absl::OkStatus();
}

absl::Status ValidateHaarDimension(int64_t n) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("orthogonal matrix dimension must be >= 1, got %d", n));
  }
  if (n > kMaxHaarDimension) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "n = %d exceeds the Haar sampling cap of %d rows", n,
        kMaxHaarDimension));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<DataMatrix> DataMatrix::Create(Matrix values) {
  if (values.rows() < 1 || values.cols() < 1) {
    return absl::InvalidArgumentError("data matrix must be at least 1 x 1");
  }
  for (int64_t i = 0; i < values.rows(); ++i) {
    for (int64_t j = 0; j < values.cols(); ++j) {
      const double v = values(i, j);
      if (!(std::fabs(v) <= 1.0)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "entry (%d, %d) = %g is outside [-1, 1]", i, j, v));
      }
    }
  }
  return DataMatrix(std::move(values));
}

std::string SettingName(Setting setting) {
  switch (setting) {
    case Setting::kA:
      return "A";
    case Setting::kB:
      return "B";
    case Setting::kC:
      return "C";
  }
  return "?";
}

std::optional<Setting> ParseSetting(const std::string& name) {
  if (name == "A" || name == "a") return Setting::kA;
  if (name == "B" || name == "b") return Setting::kB;
  if (name == "C" || name == "c") return Setting::kC;
  return std::nullopt;
}

namespace internal {

Matrix DrawHaar(int64_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd gaussian(n, n);
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < n; ++j) gaussian(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int64_t j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Matrix DrawNoise(int64_t n, int64_t p, double sigma, Rng& rng) {
  std::normal_distribution<double> normal(0.0, sigma);
  Matrix noise(n, p);
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < p; ++j) noise(i, j) = normal(rng);
  }
  return noise;
}

Matrix DrawRelease(const Matrix& x, Setting setting, double sigma,
                   Rng& masking_rng, Rng& noise_rng) {
  const Matrix noise = DrawNoise(x.rows(), x.cols(), sigma, noise_rng);
  switch (setting) {
    case Setting::kA:
      return x + noise;
    case Setting::kB:
      return DrawHaar(x.rows(), masking_rng) * (x + noise);
    case Setting::kC:
      return DrawHaar(x.rows(), masking_rng) * x + noise;
  }
  return x + noise;
}

}  // namespace internal

absl::StatusOr<OrthogonalMatrix> SampleHaarOrthogonal(int64_t n,
                                                      uint64_t seed) {
  if (absl::Status s = ValidateHaarDimension(n); !s.ok()) return s;
  Rng rng(seed);
  return OrthogonalMatrix{internal::DrawHaar(n, rng), seed};
}

absl::StatusOr<Matrix> SampleNoise(int64_t n, int64_t p, double sigma,
                                   uint64_t seed) {
  if (absl::Status s = ValidateSigma(sigma); !s.ok()) return s;
  if (n < 1 || p < 1) {
    return absl::InvalidArgumentError("noise dimensions must be positive");
  }
  Rng rng(seed);
  return internal::DrawNoise(n, p, sigma, rng);
}

absl::StatusOr<ReleaseArtifact> Release(const DataMatrix& data,
                                        Setting setting, double sigma,
                                        uint64_t seed) {
  if (absl::Status s = ValidateSigma(sigma); !s.ok()) return s;
  if (setting != Setting::kA) {
    if (absl::Status s = ValidateHaarDimension(data.rows()); !s.ok()) return s;
  }
  Rng masking_rng = MakeRng(seed, Stream::kMasking);
  Rng noise_rng = MakeRng(seed, Stream::kNoise);
  return ReleaseArtifact{
      .pseudo_data = internal::DrawRelease(data.values(), setting, sigma,
                                           masking_rng, noise_rng),
      .setting = setting,
      .sigma = sigma,
      .seed = seed};
}

absl::StatusOr<ReleaseComponents> ReplayComponents(int64_t n, int64_t p,
                                                   Setting setting,
                                                   double sigma,
                                                   uint64_t seed) {
  if (absl::Status s = ValidateSigma(sigma); !s.ok()) return s;
  ReleaseComponents components;
  Rng noise_rng = MakeRng(seed, Stream::kNoise);
  components.noise = internal::DrawNoise(n, p, sigma, noise_rng);
  if (setting != Setting::kA) {
    if (absl::Status s = ValidateHaarDimension(n); !s.ok()) return s;
    Rng masking_rng = MakeRng(seed, Stream::kMasking);
    components.mask = internal::DrawHaar(n, masking_rng);
  }
  return components;
}

absl::StatusOr<NeighborPair> MakeNeighbor(const DataMatrix& base, int64_t row,
                                          const Vector& delta) {
  if (row < 0 || row >= base.rows()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "row %d out of range for a %d-row matrix", row, base.rows()));
  }
  if (delta.size() != base.cols()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "delta has %d entries, expected %d", delta.size(), base.cols()));
  }
  const double norm = delta.norm();
  if (!(norm <= 1.0 + kNormSlack)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("neighbor difference norm %g exceeds 1", norm));
  }
  Matrix values = base.values();
  values.row(row) += delta.transpose();
  absl::StatusOr<DataMatrix> variant = DataMatrix::Create(std::move(values));
  if (!variant.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("neighbor leaves the unit box: ",
                     variant.status().message()));
  }
  return NeighborPair{.base = base,
                      .variant = *std::move(variant),
                      .row_index = row,
                      .delta_norm = norm};
}

Matrix Gram(const Matrix& y) { return y.transpose() * y; }

absl::StatusOr<Vector> OlsFromGram(const Matrix& gram, int64_t target) {
  const int64_t k = gram.rows();
  if (gram.cols() != k || k < 2) {
    return absl::InvalidArgumentError("Gram matrix must be square, k >= 2");
  }
  if (target < 0 || target >= k) {
    return absl::InvalidArgumentError("target column out of range");
  }
  Eigen::MatrixXd xx(k - 1, k - 1);
  Eigen::VectorXd xy(k - 1);
  for (int64_t i = 0, ri = 0; i < k; ++i) {
    if (i == target) continue;
    xy(ri) = gram(i, target);
    for (int64_t j = 0, rj = 0; j < k; ++j) {
      if (j == target) continue;
      xx(ri, rj++) = gram(i, j);
    }
    ++ri;
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(xx);
  // LDLT reports success on semidefinite input, so check the pivots.
  const Eigen::VectorXd pivots = ldlt.vectorD();
  if (ldlt.info() != Eigen::Success ||
      !(pivots.minCoeff() > 1e-12 * pivots.cwiseAbs().maxCoeff())) {
    return absl::FailedPreconditionError("design Gram matrix is singular");
  }
  return Vector(ldlt.solve(xy));
}

}  // namespace maskdp
