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

#include "ffgate/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "ffgate/errors.hpp"
#include "ffgate/gaussian.hpp"

namespace ffgate {

SqueezingPair SqueezingPair::from_db(double anti_squeezing_db, double squeezing_db) {
  return SqueezingPair{db_to_ratio(anti_squeezing_db), db_to_ratio(-squeezing_db)};
}

LossInference infer_loss_and_r(const SqueezingPair &pair) {
  double sp = pair.s_plus, sm = pair.s_minus;
  if (!(sp > 0.0) || !(sm > 0.0)) {
    throw std::invalid_argument("infer_loss_and_r: pair must be positive");
  }
  if (sp < sm) {
    std::swap(sp, sm);
  }
  if (sp == 1.0 && sm == 1.0) {
    throw degenerate_error("infer_loss_and_r: vacuum pair, r is undefined");
  }
  const double denom = sp + sm - 2.0;
  if (std::fabs(denom) < 1e-15) {
    throw degenerate_error("infer_loss_and_r: S+ + S- = 2, loss and r are not separable");
  }
  double loss = (sp * sm - 1.0) / denom;
  if (loss < 0.0 && loss >= -1e-9) {
    loss = 0.0;  // lossless pairs can round a hair below zero
  }
  if (!(loss >= 0.0 && loss < 1.0)) {
    throw consistency_error("infer_loss_and_r: inferred loss " + format_double(loss) +
                            " outside [0,1); measurements inconsistent with the model");
  }
  const double e2r = (sp - loss) / (1.0 - loss);
  if (!(e2r >= 1.0)) {
    throw consistency_error("infer_loss_and_r: inconsistent measurement pair");
  }
  return LossInference{loss, 0.5 * std::log(e2r)};
}

BudgetTotals loss_budget_product(const LossBudget &budget) {
  if (budget.items.empty()) {
    throw std::invalid_argument("loss_budget_product: empty budget");
  }
  double product = 1.0;
  for (const auto &[label, transmittance] : budget.items) {
    if (!(transmittance > 0.0 && transmittance <= 1.0)) {
      throw std::invalid_argument("loss_budget_product: transmittance of '" + label +
                                  "' outside (0,1]");
    }
    product *= transmittance;
  }
  return BudgetTotals{product, 1.0 - product};
}

double path_precision(double f_hz, double tolerance_degrees) {
  if (!(f_hz > 0.0) || !(tolerance_degrees > 0.0)) {
    throw std::invalid_argument("path_precision: frequency and tolerance must be positive");
  }
  constexpr double kSpeedOfLight = 2.99792458e8;
  return (kSpeedOfLight / f_hz) * (tolerance_degrees / 360.0);
}

double product_metric(const SqueezingPair &pair) {
  if (!(pair.s_plus > 0.0) || !(pair.s_minus > 0.0)) {
    throw std::invalid_argument("product_metric: pair must be positive");
  }
  return pair.s_plus * pair.s_minus;
}

}  // namespace ffgate
