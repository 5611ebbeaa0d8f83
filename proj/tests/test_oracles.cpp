/*
 * Copyright 2026 The rftiosa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles/ctmc.hpp"

namespace oracle {
namespace {

Eigen::VectorXd start(int n) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  p(0) = 1;
  return p;
}

Eigen::VectorXd by_matrix_exponential(const Ctmc& c, const Eigen::VectorXd& p0, double t) {
  const Eigen::MatrixXd qt = c.generator() * t;
  return (p0.transpose() * qt.exp()).transpose();
}

TEST(Ctmc, UniformizationMatchesMatrixExponential) {
  const Ctmc c = shared_crew_chain(0.1, 0.2, 1.0, 0.5);
  for (double t : {0.0, 0.5, 3.0, 40.0, 400.0}) {
    const Eigen::VectorXd a = c.transient(start(5), t);
    const Eigen::VectorXd b = by_matrix_exponential(c, start(5), t);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10) << t;
    EXPECT_NEAR(a.sum(), 1.0, 1e-10);
  }
}

TEST(Ctmc, StationaryIsTheLongRunLimit) {
  const Ctmc c = shared_crew_chain(0.3, 0.2, 1.0, 2.0);
  const Eigen::VectorXd pi = c.stationary();
  EXPECT_LT((pi.transpose() * c.generator()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((c.transient(start(5), 2000) - pi).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Ctmc, SingleElementClosedForms) {
  Ctmc c(2);
  c.rate(0, 1, 0.01);
  c.rate(1, 0, 1.0);
  EXPECT_NEAR(c.stationary()(1), be_unavailability(0.01, 1.0), 1e-14);
  Ctmc d(2);
  d.rate(0, 1, 0.01);
  EXPECT_NEAR(d.transient(start(2), 100)(1), be_unreliability(0.01, 100), 1e-12);
}

TEST(Ctmc, SharedCrewIsWorseThanTwoCrews) {
  const double shared = shared_crew_and_unavailability(0.1, 0.2, 1, 1);
  const double own = and_unavailability(be_unavailability(0.1, 1), be_unavailability(0.2, 1));
  EXPECT_GT(shared, own);
  EXPECT_LT(shared, 2 * own);
}

TEST(Ctmc, PriorityAndIsBelowPlainAnd) {
  for (double t : {10.0, 100.0}) {
    const double pand = pand_unreliability(0.1, 0.1, 1, 1, t);
    const double plain = and_unreliability(0.1, 0.1, 1, 1, t);
    EXPECT_GT(pand, 0);
    EXPECT_LT(pand, plain);
    // Without the ordering constraint the chain is the plain AND; B before
    // A is then just as likely, so PAND sits near half of it for small t.
    if (t == 10.0) EXPECT_NEAR(pand / plain, 0.5, 0.1);
  }
}

TEST(Ctmc, RenewalRatio) {
  EXPECT_NEAR(renewal_unavailability(1.5, 2.0), 2.0 / 3.5, 1e-15);
  EXPECT_NEAR(renewal_unavailability(100, 1), be_unavailability(0.01, 1), 1e-15);
}

}  // namespace
}  // namespace oracle
