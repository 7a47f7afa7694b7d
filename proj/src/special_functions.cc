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

#include "maskdp/special_functions.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace maskdp {
namespace {

constexpr int kRuleOrder = 20;
constexpr int kInitialPanels = 16;

struct GaussLegendreRule {
  std::array<double, kRuleOrder> nodes;
  std::array<double, kRuleOrder> weights;
};

// Roots of P_20 by Newton iteration from the Chebyshev-like initial guesses.
GaussLegendreRule MakeRule() {
  GaussLegendreRule rule;
  constexpr int n = kRuleOrder;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussLegendreRule& Rule() {
  static const GaussLegendreRule rule = MakeRule();
  return rule;
}

double Panel(const std::function<double(double)>& f, double a, double b) {
  const GaussLegendreRule& rule = Rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < kRuleOrder; ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

double Refine(const std::function<double(double)>& f, double a, double b,
              double whole, double abs_tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = Panel(f, a, mid);
  const double right = Panel(f, mid, b);
  if (depth <= 0 || std::fabs(left + right - whole) <= abs_tol) {
    return left + right;
  }
  return Refine(f, a, mid, left, abs_tol, depth - 1) +
         Refine(f, mid, b, right, abs_tol, depth - 1);
}

}  // namespace

double LogSumExp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

double IntegrateAdaptive(const std::function<double(double)>& f, double a,
                         double b, double rel_tol, int max_depth) {
  std::array<double, kInitialPanels> panels;
  const double width = (b - a) / kInitialPanels;
  double estimate = 0.0;
  for (int i = 0; i < kInitialPanels; ++i) {
    panels[i] = Panel(f, a + i * width, a + (i + 1) * width);
    estimate += panels[i];
  }
  const double abs_tol =
      std::max(rel_tol * std::fabs(estimate),
               std::numeric_limits<double>::min());
  double total = 0.0;
  for (int i = 0; i < kInitialPanels; ++i) {
    total += Refine(f, a + i * width, a + (i + 1) * width, panels[i],
                    abs_tol / kInitialPanels, max_depth);
  }
  return total;
}

}  // namespace maskdp
