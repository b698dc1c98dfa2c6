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

#include "chinfo/channels.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "chinfo/errors.hpp"
#include "chinfo/rng.hpp"

namespace chinfo {

namespace {

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

std::vector<double> checked_probs(std::vector<double> probs) {
  if (probs.empty()) throw InvalidArgument("distribution must have at least one entry");
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidArgument("distribution entries must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw InvalidArgument("distribution does not sum to one (sum = " + std::to_string(total) + ")");
  }
  return probs;
}

std::vector<double> row_sums(std::size_t rows, std::size_t cols, const std::vector<double>& mass) {
  std::vector<double> out(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[i] += mass[i * cols + j];
  return out;
}

std::vector<double> col_sums(std::size_t rows, std::size_t cols, const std::vector<double>& mass) {
  std::vector<double> out(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j] += mass[i * cols + j];
  return out;
}

std::vector<double> checked_mass(std::size_t rows, std::size_t cols, std::vector<double> mass) {
  if (rows == 0 || cols == 0) throw InvalidArgument("joint distribution must be non-empty");
  if (mass.size() != rows * cols) throw InvalidArgument("joint mass has wrong number of cells");
  return checked_probs(std::move(mass));
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs)
    : probs_(checked_probs(std::move(probs))) {}

void BscParams::validate() const {
  if (!in_unit_interval(lambda)) throw InvalidArgument("BSC lambda must lie in [0, 1]");
  if (!in_unit_interval(epsilon)) throw InvalidArgument("BSC epsilon must lie in [0, 1]");
}

void MscParams::validate() const {
  if (m < 2) throw InvalidArgument("MSC alphabet size must be at least 2");
  if (lambdas.size() != static_cast<std::size_t>(m)) {
    throw InvalidArgument("MSC needs exactly m input probabilities");
  }
  if (!in_unit_interval(epsilon)) throw InvalidArgument("MSC epsilon must lie in [0, 1]");
  double total = 0.0;
  for (double l : lambdas) {
    if (!in_unit_interval(l)) throw InvalidArgument("MSC input probabilities must lie in [0, 1]");
    total += l;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw InvalidArgument("MSC input probabilities must sum to one");
  }
}

JointDistribution::JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> mass)
    : rows_(rows),
      cols_(cols),
      mass_(checked_mass(rows, cols, std::move(mass))),
      row_marginal_(row_sums(rows_, cols_, mass_)),
      col_marginal_(col_sums(rows_, cols_, mass_)) {}

std::vector<double> JointDistribution::marginal_product() const {
  std::vector<double> out(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i * cols_ + j] = row_marginal_[i] * col_marginal_[j];
  return out;
}

JointDistribution bsc_joint(const BscParams& params) {
  params.validate();
  const double l = params.lambda;
  const double e = params.epsilon;
  return JointDistribution(2, 2, {l * (1.0 - e), l * e, (1.0 - l) * e, (1.0 - l) * (1.0 - e)});
}

JointDistribution msc_joint(const MscParams& params) {
  params.validate();
  const auto m = static_cast<std::size_t>(params.m);
  const double keep = 1.0 - params.epsilon;
  const double move = params.epsilon / static_cast<double>(params.m - 1);
  std::vector<double> mass(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) mass[i * m + j] = params.lambdas[i] * (i == j ? keep : move);
  return JointDistribution(m, m, std::move(mass));
}

BscParamSampler::BscParamSampler(std::uint64_t seed) : stream_(seed) {}

BscParams BscParamSampler::next() {
  BscParams p;
  p.lambda = stream_.next();
  p.epsilon = stream_.next();
  return p;
}

std::string_view to_string(SimplexScheme scheme) {
  return scheme == SimplexScheme::rejection ? "rejection" : "normalized";
}

SimplexScheme parse_simplex_scheme(std::string_view name) {
  if (name == "rejection") return SimplexScheme::rejection;
  if (name == "normalized") return SimplexScheme::normalized;
  throw InvalidArgument("unknown simplex scheme '" + std::string(name) + "'");
}

MscParamSampler::MscParamSampler(std::uint64_t seed, int m, SimplexScheme scheme)
    : stream_(seed), m_(m), scheme_(scheme),
      proposal_(m >= 2 ? static_cast<std::size_t>(m - 1) : 0) {
  if (m < 2) throw InvalidArgument("MSC alphabet size must be at least 2");
}

MscParams MscParamSampler::next() {
  MscParams p;
  p.m = m_;
  if (scheme_ == SimplexScheme::normalized) {
    ++stats_.proposals;
    ++stats_.accepted;
    p.lambdas.resize(static_cast<std::size_t>(m_));
    double sum = 0.0;
    for (auto& v : p.lambdas) {
      v = stream_.next();
      sum += v;
    }
    for (auto& v : p.lambdas) v /= sum;
    p.epsilon = stream_.next();
    return p;
  }

  double total = 0.0;
  do {
    ++stats_.proposals;
    total = 0.0;
    for (auto& v : proposal_) {
      v = stream_.next();
      total += v;
    }
  } while (total >= 1.0);
  ++stats_.accepted;

  p.lambdas.assign(proposal_.begin(), proposal_.end());
  p.lambdas.push_back(1.0 - total);
  p.epsilon = stream_.next();
  return p;
}

std::vector<BscParams> sample_bsc_params(std::uint64_t seed, std::size_t count) {
  BscParamSampler sampler(seed);
  std::vector<BscParams> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

std::vector<MscParams> sample_msc_params(std::uint64_t seed, std::size_t count, int m,
                                         SimplexSamplingStats* stats, SimplexScheme scheme) {
  MscParamSampler sampler(seed, m, scheme);
  std::vector<MscParams> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  if (stats) *stats = sampler.stats();
  return out;
}

}  // namespace chinfo
