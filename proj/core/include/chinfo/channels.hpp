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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "chinfo/rng.hpp"

namespace chinfo {

/// Tolerance used when validating that probability vectors are normalized.
inline constexpr double kNormTolerance = 1e-12;

/// Non-negative probability vector summing to one.
class DiscreteDistribution {
 public:
  /// Throws InvalidArgument on negative/non-finite entries, empty input or a
  /// total mass more than kNormTolerance away from one.
  explicit DiscreteDistribution(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Binary symmetric channel: input law (lambda, 1 - lambda), crossover epsilon.
struct BscParams {
  double lambda = 0.5;
  double epsilon = 0.0;

  void validate() const;
};

/// M-ary symmetric channel. Each symbol is kept with probability 1 - epsilon
/// and moved to each of the other m - 1 symbols with probability
/// epsilon / (m - 1).
struct MscParams {
  int m = 2;
  std::vector<double> lambdas;
  double epsilon = 0.0;

  void validate() const;
};

/// Joint mass p(x, y) over input rows and output columns, with marginals.
class JointDistribution {
 public:
  /// `mass` is row-major with rows * cols entries.
  JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> mass);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t x, std::size_t y) const { return mass_[x * cols_ + y]; }

  /// Row-major flattened joint.
  std::span<const double> cells() const noexcept { return mass_; }
  const DiscreteDistribution& row_marginal() const noexcept { return row_marginal_; }
  const DiscreteDistribution& col_marginal() const noexcept { return col_marginal_; }

  /// Row-major flattened p(x) p(y).
  std::vector<double> marginal_product() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> mass_;
  DiscreteDistribution row_marginal_;
  DiscreteDistribution col_marginal_;
};

JointDistribution bsc_joint(const BscParams& params);
JointDistribution msc_joint(const MscParams& params);

/// Endless stream of BSC parameters: lambda then epsilon, each uniform on (0, 1).
class BscParamSampler {
 public:
  explicit BscParamSampler(std::uint64_t seed);
  BscParams next();

 private:
  UniformStream stream_;
};

/// How MSC input distributions are drawn. `rejection` keeps lambda_1..lambda_{m-1}
/// marginally uniform; `normalized` divides m uniforms by their sum.
enum class SimplexScheme { rejection, normalized };

std::string_view to_string(SimplexScheme scheme);
SimplexScheme parse_simplex_scheme(std::string_view name);

struct SimplexSamplingStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
};

/// Endless stream of MSC parameters. With the rejection scheme
/// lambda_1..lambda_{m-1} are drawn i.i.d. uniform on (0, 1) and the proposal
/// is rejected until their sum is below one; lambda_m takes the remainder.
/// For m = 4 about one proposal in six is accepted. epsilon is then drawn
/// uniform on (0, 1).
class MscParamSampler {
 public:
  MscParamSampler(std::uint64_t seed, int m, SimplexScheme scheme = SimplexScheme::rejection);
  MscParams next();
  const SimplexSamplingStats& stats() const noexcept { return stats_; }

 private:
  UniformStream stream_;
  int m_;
  SimplexScheme scheme_;
  std::vector<double> proposal_;
  SimplexSamplingStats stats_;
};

/// Draws `count` (lambda, epsilon) pairs, each i.i.d. uniform on (0, 1),
/// lambda first. Deterministic in `seed`.
std::vector<BscParams> sample_bsc_params(std::uint64_t seed, std::size_t count);

/// The first `count` draws of MscParamSampler(seed, m, scheme).
std::vector<MscParams> sample_msc_params(std::uint64_t seed, std::size_t count, int m,
                                         SimplexSamplingStats* stats = nullptr,
                                         SimplexScheme scheme = SimplexScheme::rejection);

}  // namespace chinfo
