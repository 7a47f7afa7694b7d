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

// Release mechanisms for bounded data matrices:
//
//   Setting A:  Y = X + C
//   Setting B:  Y = A (X + C)
//   Setting C:  Y = A X + C
//
// where C has i.i.d. N(0, sigma^2) entries and A is a Haar-distributed n x n
// orthogonal matrix. A and C come from independent sub-streams of the release
// seed, so a (data, setting, sigma, seed) tuple replays bit-for-bit.

#ifndef MASKDP_MECHANISMS_H_
#define MASKDP_MECHANISMS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "maskdp/seeding.h"

namespace maskdp {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Largest n for which a Haar mask will be sampled.
inline constexpr int64_t kMaxHaarDimension = 16384;

// An n x p matrix with every entry in [-1, 1].
class DataMatrix {
 public:
  static absl::StatusOr<DataMatrix> Create(Matrix values);

  const Matrix& values() const { return values_; }
  int64_t rows() const { return values_.rows(); }
  int64_t cols() const { return values_.cols(); }

 private:
  explicit DataMatrix(Matrix values) : values_(std::move(values)) {}
  Matrix values_;
};

struct OrthogonalMatrix {
  Matrix values;
  uint64_t seed;
};

enum class Setting { kA, kB, kC };

std::string SettingName(Setting setting);
std::optional<Setting> ParseSetting(const std::string& name);

struct ReleaseArtifact {
  Matrix pseudo_data;
  Setting setting;
  double sigma;
  uint64_t seed;
};

// The mask and noise a release drew. `mask` is empty for setting A.
struct ReleaseComponents {
  Matrix mask;
  Matrix noise;
};

// Two matrices that agree everywhere except `row_index`, where they differ by
// a vector of norm `delta_norm` <= 1.
struct NeighborPair {
  DataMatrix base;
  DataMatrix variant;
  int64_t row_index;
  double delta_norm;
};

// Haar-distributed orthogonal matrix: QR of an n x n standard normal matrix
// with the columns of Q flipped so that R has a positive diagonal.
absl::StatusOr<OrthogonalMatrix> SampleHaarOrthogonal(int64_t n,
                                                      uint64_t seed);

// n x p matrix of i.i.d. N(0, sigma^2) entries.
absl::StatusOr<Matrix> SampleNoise(int64_t n, int64_t p, double sigma,
                                   uint64_t seed);

absl::StatusOr<ReleaseArtifact> Release(const DataMatrix& data,
                                        Setting setting, double sigma,
                                        uint64_t seed);

// Regenerates the mask and noise that Release(data, setting, sigma, seed)
// used, for an n x p input.
absl::StatusOr<ReleaseComponents> ReplayComponents(int64_t n, int64_t p,
                                                   Setting setting,
                                                   double sigma,
                                                   uint64_t seed);

// variant = base with `row` replaced by base.row(row) + delta.
absl::StatusOr<NeighborPair> MakeNeighbor(const DataMatrix& base, int64_t row,
                                          const Vector& delta);

// Y^T Y.
Matrix Gram(const Matrix& y);

// Least-squares coefficients of column `target` on all other columns,
// computed from the Gram matrix of the combined [X | y] matrix alone.
absl::StatusOr<Vector> OlsFromGram(const Matrix& gram, int64_t target);

namespace internal {

Matrix DrawHaar(int64_t n, Rng& rng);
Matrix DrawNoise(int64_t n, int64_t p, double sigma, Rng& rng);

// One draw of the mechanism on raw values, with the caller owning the
// generators. `masking_rng` is untouched for setting A.
Matrix DrawRelease(const Matrix& x, Setting setting, double sigma,
                   Rng& masking_rng, Rng& noise_rng);

}  // namespace internal
}  // namespace maskdp

#endif  // MASKDP_MECHANISMS_H_
