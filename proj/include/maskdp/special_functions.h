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

#ifndef MASKDP_SPECIAL_FUNCTIONS_H_
#define MASKDP_SPECIAL_FUNCTIONS_H_

#include <cmath>
#include <functional>
#include <span>

namespace maskdp {

// ln Gamma(x) for x > 0, without touching the global signgam.
inline double LogGamma(double x) {
#if defined(__GLIBC__)
  int sign;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// log(sum(exp(values))), stable for any spread of magnitudes. Returns -inf
// for an empty span.
double LogSumExp(std::span<const double> values);

// Adaptive Gauss-Legendre quadrature of f over [a, b]. Each panel is
// integrated with a 20-point rule and split in two until the halves agree
// with the whole to `rel_tol` (relative to the running integral estimate).
double IntegrateAdaptive(const std::function<double(double)>& f, double a,
                         double b, double rel_tol = 1e-12, int max_depth = 40);

}  // namespace maskdp

#endif  // MASKDP_SPECIAL_FUNCTIONS_H_
