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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ffgate/analysis.hpp"
#include "ffgate/errors.hpp"

using namespace ffgate;

namespace {

// Independent oracle: bisect (S+ - L)(S- - L) = (1 - L)^2 for L in [0, 1).
double bisect_loss(double sp, double sm) {
  auto h = [&](double loss) {
    return (sp - loss) * (sm - loss) - (1.0 - loss) * (1.0 - loss);
  };
  double lo = 0.0, hi = 1.0 - 1e-12;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("lossless pure pair infers zero loss") {
  const double r = 1.0;
  LossInference inf = infer_loss_and_r(SqueezingPair{std::exp(2.0), std::exp(-2.0)});
  CHECK(inf.loss == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(inf.r == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("the measured 9.3/3.6 dB pair infers 39.1% loss") {
  SqueezingPair pair = SqueezingPair::from_db(9.3, 3.6);
  CHECK(pair.s_plus == doctest::Approx(8.511380382023766).epsilon(1e-14));
  CHECK(pair.s_minus == doctest::Approx(0.436515832240166).epsilon(1e-14));

  LossInference inf = infer_loss_and_r(pair);
  CHECK(inf.loss == doctest::Approx(0.3908164726751598).epsilon(1e-12));
  CHECK(inf.loss == doctest::Approx(bisect_loss(pair.s_plus, pair.s_minus)).epsilon(1e-10));

  // Swapped argument order is the mirrored case and must agree.
  LossInference mirrored = infer_loss_and_r(SqueezingPair{pair.s_minus, pair.s_plus});
  CHECK(mirrored.loss == inf.loss);
  CHECK(mirrored.r == inf.r);
}

TEST_CASE("degenerate and inconsistent pairs are rejected") {
  CHECK_THROWS_AS(infer_loss_and_r(SqueezingPair{1.0, 1.0}), degenerate_error);
  CHECK_THROWS_AS(infer_loss_and_r(SqueezingPair{1.5, 1.4}), consistency_error);
  CHECK_THROWS_AS(infer_loss_and_r(SqueezingPair{0.9, 0.5}), consistency_error);
  CHECK_THROWS_AS(infer_loss_and_r(SqueezingPair{-1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("inference inverts the forward model across a grid") {
  for (double loss = 0.0; loss <= 0.951; loss += 0.05) {
    for (double r = 0.01; r <= 3.01; r += 0.25) {
      const double sp = (1.0 - loss) * std::exp(2.0 * r) + loss;
      const double sm = (1.0 - loss) * std::exp(-2.0 * r) + loss;
      LossInference inf = infer_loss_and_r(SqueezingPair{sp, sm});
      CHECK(std::fabs(inf.loss - loss) < 1e-9);
      CHECK(std::fabs(inf.r - r) < 1e-9);
      // And the closed form agrees with the bisection oracle.
      CHECK(std::fabs(inf.loss - bisect_loss(sp, sm)) < 1e-10);
    }
  }
}

TEST_CASE("loss budget product") {
  LossBudget budget;
  for (double t : {0.96, 0.93, 0.92, 0.99, 0.79}) {
    budget.items.emplace_back("stage", t);
  }
  BudgetTotals totals = loss_budget_product(budget);
  CHECK(totals.transmittance == doctest::Approx(0.6423981696).epsilon(1e-12));
  CHECK(totals.loss == doctest::Approx(0.3576018304).epsilon(1e-12));

  CHECK(loss_budget_product(LossBudget{{{"one", 1.0}}}).loss == 0.0);
  CHECK(loss_budget_product(LossBudget{{{"a", 0.5}, {"b", 0.5}}}).loss ==
        doctest::Approx(0.75).epsilon(1e-15));

  CHECK_THROWS_AS(loss_budget_product(LossBudget{}), std::invalid_argument);
  CHECK_THROWS_AS(loss_budget_product(LossBudget{{{"bad", 0.0}}}), std::invalid_argument);
  CHECK_THROWS_AS(loss_budget_product(LossBudget{{{"bad", 1.2}}}), std::invalid_argument);
}

TEST_CASE("path precision arithmetic") {
  CHECK(path_precision(1e12, 1.0) == doctest::Approx(8.327568277777778e-7).epsilon(1e-12));
  CHECK(path_precision(1e12, 360.0) == doctest::Approx(2.99792458e-4).epsilon(1e-12));
  CHECK(path_precision(4e10, 1.0) == doctest::Approx(2.0818920694444444e-5).epsilon(1e-12));

  // Homogeneity: linear in the tolerance, inverse in the frequency.
  CHECK(path_precision(1e12, 2.0) == doctest::Approx(2.0 * path_precision(1e12, 1.0)));
  CHECK(path_precision(2e12, 1.0) == doctest::Approx(0.5 * path_precision(1e12, 1.0)));

  CHECK_THROWS_AS(path_precision(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(path_precision(1e12, 0.0), std::invalid_argument);
}

TEST_CASE("product metric") {
  CHECK(product_metric(SqueezingPair{1.0, 1.0}) == 1.0);
  CHECK(product_metric(SqueezingPair{8.511380382023766, 0.436515832240166}) ==
        doctest::Approx(3.715352290971724).epsilon(1e-12));
  for (double r : {0.2, 0.9, 1.7}) {
    CHECK(product_metric(SqueezingPair{std::exp(2.0 * r), std::exp(-2.0 * r)}) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(product_metric(SqueezingPair{0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("attenuating a pure state strictly raises the product") {
  for (double r : {0.3, 0.8, 1.5}) {
    for (double eta : {0.2, 0.5, 0.9}) {
      const double sp = eta * std::exp(2.0 * r) + (1.0 - eta);
      const double sm = eta * std::exp(-2.0 * r) + (1.0 - eta);
      CHECK(product_metric(SqueezingPair{sp, sm}) > 1.0);
    }
    // ...and only eta = 1 keeps it at one.
    CHECK(product_metric(SqueezingPair{std::exp(2.0 * r), std::exp(-2.0 * r)}) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}
