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

#include "chinfo/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "chinfo/errors.hpp"
#include "chinfo/scalar_opt.hpp"

namespace chinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::pair<MeasureKind, std::string_view>, 4> kKindNames{{
    {MeasureKind::shannon_mi, "shannon_mi"},
    {MeasureKind::chernoff_mi, "chernoff_mi"},
    {MeasureKind::shannon_paper_bsc, "shannon_paper_bsc"},
    {MeasureKind::chernoff_paper_bsc, "chernoff_paper_bsc"},
}};

// Divergences are non-negative; rounding can push an exact zero slightly below.
double non_negative(double v) { return v < 0.0 ? 0.0 : v; }

// Cells where both arguments carry mass, stored as logs.
struct CommonSupport {
  std::vector<double> log_p1;
  std::vector<double> log_p2;
};

CommonSupport common_support(std::span<const double> p1, std::span<const double> p2) {
  CommonSupport s;
  s.log_p1.reserve(p1.size());
  s.log_p2.reserve(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (p1[i] > 0.0 && p2[i] > 0.0) {
      s.log_p1.push_back(std::log(p1[i]));
      s.log_p2.push_back(std::log(p2[i]));
    }
  }
  return s;
}

double objective_on(const CommonSupport& s, double alpha) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s.log_p1.size(); ++i) {
    sum += std::exp(alpha * s.log_p1[i] + (1.0 - alpha) * s.log_p2[i]);
  }
  return std::log(sum);
}

bool numerically_equal(std::span<const double> p1, std::span<const double> p2) {
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const double scale = std::max(p1[i], p2[i]);
    if (std::abs(p1[i] - p2[i]) > 4.0 * std::numeric_limits<double>::epsilon() * scale) return false;
  }
  return true;
}

void check_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InvalidArgument("distributions differ in length (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
  }
}

}  // namespace

std::string_view to_string(MeasureKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

MeasureKind parse_measure_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  throw InvalidArgument("unknown measure '" + std::string(name) + "'");
}

bool is_bsc_only(MeasureKind kind) {
  return kind == MeasureKind::shannon_paper_bsc || kind == MeasureKind::chernoff_paper_bsc;
}

bool uses_alpha(MeasureKind kind) {
  return kind == MeasureKind::chernoff_mi || kind == MeasureKind::chernoff_paper_bsc;
}

double MeasureValue::in(LogBase base) const {
  return base == LogBase::bits ? value / std::numbers::ln2 : value;
}

MeasureValue kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  check_same_length(p.size(), q.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return {kInf, LogBase::nats, std::nullopt};
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return {non_negative(sum), LogBase::nats, std::nullopt};
}

MeasureValue entropy(const DiscreteDistribution& p) {
  double sum = 0.0;
  for (double v : p.probs())
    if (v > 0.0) sum -= v * std::log(v);
  return {non_negative(sum), LogBase::nats, std::nullopt};
}

MeasureValue shannon_mi(const JointDistribution& joint) {
  const auto& px = joint.row_marginal();
  const auto& py = joint.col_marginal();
  double sum = 0.0;
  for (std::size_t x = 0; x < joint.rows(); ++x) {
    for (std::size_t y = 0; y < joint.cols(); ++y) {
      const double p = joint(x, y);
      if (p > 0.0) sum += p * std::log(p / (px[x] * py[y]));
    }
  }
  return {non_negative(sum), LogBase::nats, std::nullopt};
}

double chernoff_objective(std::span<const double> p1, std::span<const double> p2, double alpha) {
  check_same_length(p1.size(), p2.size());
  return objective_on(common_support(p1, p2), alpha);
}

MeasureValue chernoff_information(std::span<const double> p1, std::span<const double> p2,
                                  double tol) {
  check_same_length(p1.size(), p2.size());
  if (numerically_equal(p1, p2)) return {0.0, LogBase::nats, 0.5};

  const CommonSupport support = common_support(p1, p2);
  if (support.log_p1.empty()) return {kInf, LogBase::nats, 0.5};

  const auto best =
      minimize_scalar([&](double alpha) { return objective_on(support, alpha); }, 0.0, 1.0, tol);
  return {non_negative(-best.value), LogBase::nats, best.argmin};
}

MeasureValue chernoff_information(const DiscreteDistribution& p1, const DiscreteDistribution& p2,
                                  double tol) {
  return chernoff_information(p1.probs(), p2.probs(), tol);
}

MeasureValue chernoff_mi(const JointDistribution& joint, double tol) {
  const std::vector<double> product = joint.marginal_product();
  return chernoff_information(joint.cells(), product, tol);
}

MeasureValue shannon_paper_bsc(const BscParams& params) {
  params.validate();
  const double l = params.lambda;
  const double e = params.epsilon;
  const double q = l * (1.0 - e) + (1.0 - l) * e;
  const double r = l * e + (1.0 - l) * (1.0 - e);
  auto term = [](double a, double b) {
    if (a == 0.0) return 0.0;
    if (b == 0.0) return kInf;
    return a * std::log(a / b);
  };
  return {non_negative(term(1.0 - e, q) + term(e, r)), LogBase::nats, std::nullopt};
}

MeasureValue chernoff_paper_bsc(const BscParams& params, double tol) {
  params.validate();
  const double l = params.lambda;
  const double e = params.epsilon;
  const double q = l * (1.0 - e) + (1.0 - l) * e;
  const std::array<double, 2> conditional{1.0 - e, e};
  const std::array<double, 2> output{q, l * e + (1.0 - l) * (1.0 - e)};
  return chernoff_information(conditional, output, tol);
}

MeasureValue evaluate(MeasureKind kind, const BscParams& params, double tol) {
  switch (kind) {
    case MeasureKind::shannon_mi:
      return shannon_mi(bsc_joint(params));
    case MeasureKind::chernoff_mi:
      return chernoff_mi(bsc_joint(params), tol);
    case MeasureKind::shannon_paper_bsc:
      return shannon_paper_bsc(params);
    case MeasureKind::chernoff_paper_bsc:
      return chernoff_paper_bsc(params, tol);
  }
  throw InvalidArgument("unknown measure kind");
}

MeasureValue evaluate(MeasureKind kind, const MscParams& params, double tol) {
  switch (kind) {
    case MeasureKind::shannon_mi:
      return shannon_mi(msc_joint(params));
    case MeasureKind::chernoff_mi:
      return chernoff_mi(msc_joint(params), tol);
    case MeasureKind::shannon_paper_bsc:
    case MeasureKind::chernoff_paper_bsc:
      throw InvalidArgument(std::string(to_string(kind)) + " is only defined for BSC parameters");
  }
  throw InvalidArgument("unknown measure kind");
}

}  // namespace chinfo
