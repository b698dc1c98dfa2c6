/*
 * Copyright 2026 The chinfo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "chinfo/channels.hpp"
#include "chinfo/errors.hpp"

namespace chinfo {
namespace {

void expect_cells(const JointDistribution& j, const std::vector<double>& want, double tol) {
  ASSERT_EQ(j.cells().size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(j.cells()[i], want[i], tol) << i;
}

TEST(DiscreteDistribution, RejectsBadInput) {
  EXPECT_THROW(DiscreteDistribution({}), InvalidArgument);
  EXPECT_THROW(DiscreteDistribution({0.5, 0.6}), InvalidArgument);
  EXPECT_THROW(DiscreteDistribution({-0.1, 1.1}), InvalidArgument);
  EXPECT_THROW(DiscreteDistribution({NAN, 1.0}), InvalidArgument);
  EXPECT_NO_THROW(DiscreteDistribution({0.25, 0.75}));
}

TEST(BscJoint, Noiseless) {
  expect_cells(bsc_joint({0.5, 0.0}), {0.5, 0.0, 0.0, 0.5}, 0.0);
}

TEST(BscJoint, FullyNoisy) {
  expect_cells(bsc_joint({0.5, 0.5}), {0.25, 0.25, 0.25, 0.25}, 0.0);
}

TEST(BscJoint, GeneralPoint) {
  expect_cells(bsc_joint({0.3, 0.1}), {0.27, 0.03, 0.07, 0.63}, 1e-15);
}

TEST(BscJoint, RejectsOutOfRange) {
  EXPECT_THROW(bsc_joint({1.2, 0.1}), InvalidArgument);
  EXPECT_THROW(bsc_joint({0.5, -0.1}), InvalidArgument);
  EXPECT_THROW(bsc_joint({NAN, 0.1}), InvalidArgument);
}

TEST(BscJoint, LabelSwapSymmetry) {
  for (double lambda : {0.1, 0.37, 0.8}) {
    for (double eps : {0.05, 0.4, 0.9}) {
      const auto a = bsc_joint({lambda, eps});
      const auto b = bsc_joint({1.0 - lambda, eps});
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) EXPECT_NEAR(a(x, y), b(1 - x, 1 - y), 1e-15);
    }
  }
}

TEST(MscJoint, TwoSymbolsMatchesBsc) {
  const auto m = msc_joint({2, {0.5, 0.5}, 0.2});
  const auto b = bsc_joint({0.5, 0.2});
  expect_cells(m, std::vector<double>(b.cells().begin(), b.cells().end()), 1e-15);
}

TEST(MscJoint, UniformAtIndependencePoint) {
  const auto j = msc_joint({4, {0.25, 0.25, 0.25, 0.25}, 0.75});
  expect_cells(j, std::vector<double>(16, 1.0 / 16.0), 1e-15);
}

TEST(MscJoint, NoiselessIsDiagonal) {
  const auto j = msc_joint({3, {0.2, 0.3, 0.5}, 0.0});
  expect_cells(j, {0.2, 0, 0, 0, 0.3, 0, 0, 0, 0.5}, 0.0);
}

TEST(MscJoint, CellFormula) {
  const MscParams p{4, {0.1, 0.2, 0.3, 0.4}, 0.3};
  const auto j = msc_joint(p);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      const double want = x == y ? p.lambdas[x] * 0.7 : p.lambdas[x] * 0.1;
      EXPECT_NEAR(j(x, y), want, 1e-15);
    }
}

TEST(MscJoint, RejectsInvalid) {
  EXPECT_THROW(msc_joint({1, {1.0}, 0.1}), InvalidArgument);
  EXPECT_THROW(msc_joint({3, {0.5, 0.5}, 0.1}), InvalidArgument);
  EXPECT_THROW(msc_joint({3, {0.5, 0.4, 0.2}, 0.1}), InvalidArgument);
  EXPECT_THROW(msc_joint({2, {0.5, 0.5}, 1.5}), InvalidArgument);
}

TEST(JointDistribution, NormalizedWithMatchingMarginals) {
  UniformStream u(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 5;
    std::vector<double> lam(static_cast<std::size_t>(m));
    for (auto& v : lam) v = u.next();
    const double s = std::accumulate(lam.begin(), lam.end(), 0.0);
    for (auto& v : lam) v /= s;
    const auto j = msc_joint({m, lam, u.next()});
    EXPECT_NEAR(std::accumulate(j.cells().begin(), j.cells().end(), 0.0), 1.0, 1e-12);
    for (std::size_t x = 0; x < j.rows(); ++x) {
      double row = 0.0;
      for (std::size_t y = 0; y < j.cols(); ++y) row += j(x, y);
      EXPECT_NEAR(row, j.row_marginal()[x], 1e-12);
    }
    for (std::size_t y = 0; y < j.cols(); ++y) {
      double col = 0.0;
      for (std::size_t x = 0; x < j.rows(); ++x) col += j(x, y);
      EXPECT_NEAR(col, j.col_marginal()[y], 1e-12);
    }
  }
}

TEST(MscJoint, IndependenceAtCriticalEpsilon) {
  UniformStream u(11);
  for (int m = 2; m <= 6; ++m) {
    std::vector<double> lam(static_cast<std::size_t>(m));
    for (auto& v : lam) v = u.next();
    const double s = std::accumulate(lam.begin(), lam.end(), 0.0);
    for (auto& v : lam) v /= s;
    const auto j = msc_joint({m, lam, (m - 1.0) / m});
    const auto prod = j.marginal_product();
    for (std::size_t i = 0; i < prod.size(); ++i) EXPECT_NEAR(j.cells()[i], prod[i], 1e-12);
  }
}

TEST(SampleBscParams, Deterministic) {
  const auto a = sample_bsc_params(42, 20000);
  const auto b = sample_bsc_params(42, 20000);
  ASSERT_EQ(a.size(), 20000u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].lambda, b[i].lambda);
    EXPECT_EQ(a[i].epsilon, b[i].epsilon);
  }
}

TEST(SampleBscParams, UniformMeanAndOpenInterval) {
  const auto a = sample_bsc_params(3, 20000);
  double sl = 0.0, se = 0.0;
  for (const auto& p : a) {
    EXPECT_GT(p.lambda, 0.0);
    EXPECT_LT(p.lambda, 1.0);
    EXPECT_GT(p.epsilon, 0.0);
    EXPECT_LT(p.epsilon, 1.0);
    sl += p.lambda;
    se += p.epsilon;
  }
  EXPECT_NEAR(sl / 20000.0, 0.5, 0.02);
  EXPECT_NEAR(se / 20000.0, 0.5, 0.02);
}

TEST(SampleBscParams, SeedsDiffer) {
  const auto a = sample_bsc_params(1, 100);
  const auto b = sample_bsc_params(2, 100);
  int same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i].lambda == b[i].lambda;
  EXPECT_LT(same, 100);
}

TEST(SampleBscParams, ZeroCountIsEmpty) { EXPECT_TRUE(sample_bsc_params(1, 0).empty()); }

TEST(SampleMscParams, SimplexInvariant) {
  for (int m : {2, 3, 4, 5}) {
    for (const auto& p : sample_msc_params(5, 2000, m)) {
      EXPECT_EQ(p.m, m);
      ASSERT_EQ(p.lambdas.size(), static_cast<std::size_t>(m));
      double s = 0.0;
      for (double v : p.lambdas) {
        EXPECT_GE(v, 0.0);
        s += v;
      }
      EXPECT_NEAR(s, 1.0, 1e-12);
      EXPECT_NO_THROW(p.validate());
    }
  }
}

TEST(SampleMscParams, RejectionRateForFourSymbols) {
  SimplexSamplingStats stats;
  sample_msc_params(9, 60000, 4, &stats);
  EXPECT_EQ(stats.accepted, 60000u);
  const double rate = static_cast<double>(stats.accepted) / static_cast<double>(stats.proposals);
  EXPECT_NEAR(rate, 1.0 / 6.0, 0.005);
}

TEST(SampleMscParams, RejectionKeepsMarginalsUniformBelowOne) {
  const auto draws = sample_msc_params(13, 60000, 4);
  double s = 0.0;
  for (const auto& p : draws) s += p.lambdas[0];
  EXPECT_NEAR(s / 60000.0, 0.25, 0.01);
}

TEST(SampleMscParams, Deterministic) {
  const auto a = sample_msc_params(21, 1000, 4);
  const auto b = sample_msc_params(21, 1000, 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].lambdas, b[i].lambdas);
    EXPECT_EQ(a[i].epsilon, b[i].epsilon);
  }
}

TEST(SampleMscParams, NormalizedScheme) {
  SimplexSamplingStats stats;
  const auto draws = sample_msc_params(4, 1000, 4, &stats, SimplexScheme::normalized);
  EXPECT_EQ(stats.proposals, stats.accepted);
  for (const auto& p : draws) EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(parse_simplex_scheme("normalized"), SimplexScheme::normalized);
  EXPECT_THROW(parse_simplex_scheme("dirichlet"), InvalidArgument);
}

TEST(SampleMscParams, RejectsSmallAlphabet) {
  EXPECT_THROW(sample_msc_params(1, 10, 1), InvalidArgument);
}

}  // namespace
}  // namespace chinfo
