// Copyright 2026 The ffgate Authors
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

#ifndef FFGATE_ANALYSIS_HPP
#define FFGATE_ANALYSIS_HPP

#include <string>
#include <utility>
#include <vector>

namespace ffgate {

/// Measured shot-normalized squeezing pair (linear, not dB).
struct SqueezingPair {
  double s_plus;
  double s_minus;

  /// Accepts the usual positive-dB quoting: "x dB of squeezing" means
  /// s_minus = 10^{-x/10}, "y dB of anti-squeezing" means s_plus = 10^{y/10}.
  static SqueezingPair from_db(double anti_squeezing_db, double squeezing_db);
};

struct LossInference {
  double loss;  // lumped transmittance deficit in [0,1)
  double r;     // squeezing parameter of the underlying pure state
};

/// Inverts S(+/-) = (1-L) e^{+/-2r} + L in closed form:
/// L = (S+ S- - 1)/(S+ + S- - 2), then e^{2r} = (S+ - L)/(1 - L).
/// Throws degenerate_error for the vacuum pair and a consistency error when
/// no loss in [0,1) reproduces the inputs.
LossInference infer_loss_and_r(const SqueezingPair &pair);

struct LossBudget {
  std::vector<std::pair<std::string, double>> items;  // (label, transmittance)
};

struct BudgetTotals {
  double transmittance;
  double loss;
};

BudgetTotals loss_budget_product(const LossBudget &budget);

/// Path length corresponding to a phase tolerance at frequency f:
/// (c/f) * (degrees/360), exact speed of light.
double path_precision(double f_hz, double tolerance_degrees);

/// S+ * S-; equals 1 for pure Gaussian states and grows with impurity.
double product_metric(const SqueezingPair &pair);

}  // namespace ffgate

#endif
