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

// Small sample-statistics helpers shared by the audits and tests.

#ifndef MASKDP_STATS_H_
#define MASKDP_STATS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace maskdp {

struct MeanEstimate {
  double mean;
  double std_error;
};

MeanEstimate MeanWithStdError(std::span<const double> values);

// sqrt(p (1 - p) / n).
double BinomialStdError(double p, int64_t n);

struct KolmogorovSmirnovResult {
  double statistic;  // sup |F_a - F_b|
  double p_value;    // asymptotic
};

KolmogorovSmirnovResult KolmogorovSmirnovTwoSample(std::vector<double> a,
                                                   std::vector<double> b);

// P[K > lambda] for the Kolmogorov distribution.
double KolmogorovSurvival(double lambda);

}  // namespace maskdp

#endif  // MASKDP_STATS_H_
