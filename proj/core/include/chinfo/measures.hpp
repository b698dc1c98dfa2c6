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

#include <optional>
#include <span>
#include <string_view>

#include "chinfo/channels.hpp"

namespace chinfo {

/// Default tolerance on the Chernoff exponent alpha.
inline constexpr double kDefaultAlphaTol = 1e-10;

enum class LogBase { nats, bits };

enum class MeasureKind {
  shannon_mi,          ///< D(p(x,y) || p(x)p(y)) over every cell
  chernoff_mi,         ///< Chernoff information between p(x,y) and p(x)p(y)
  shannon_paper_bsc,   ///< per-row BSC form, D(P(Y|x1) || P(Y))
  chernoff_paper_bsc,  ///< per-row BSC Chernoff form, C(P(Y|x1), P(Y))
};

std::string_view to_string(MeasureKind kind);
/// Throws InvalidArgument for unknown names.
MeasureKind parse_measure_kind(std::string_view name);
/// True for the two per-row BSC forms, which are only defined on BscParams.
bool is_bsc_only(MeasureKind kind);
bool uses_alpha(MeasureKind kind);

/// An information value. Always stored in nats; `log_base` only selects the
/// unit used when the value is reported.
struct MeasureValue {
  double value = 0.0;
  LogBase log_base = LogBase::nats;
  std::optional<double> alpha_star;

  /// `value` converted to `base`.
  double in(LogBase base) const;
  double reported() const { return in(log_base); }
};

/// Relative entropy sum p log(p/q); +inf when p has mass outside supp(q).
MeasureValue kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q);
MeasureValue entropy(const DiscreteDistribution& p);
MeasureValue shannon_mi(const JointDistribution& joint);

/// log sum_x p1^alpha p2^(1-alpha), where cells with zero mass in either
/// argument contribute nothing for every alpha in [0, 1]. Returns -inf when
/// the supports are disjoint.
double chernoff_objective(std::span<const double> p1, std::span<const double> p2, double alpha);

/// -min over alpha in [0, 1] of chernoff_objective. Identical inputs give 0
/// with alpha* reported as 0.5; disjoint supports give +inf.
MeasureValue chernoff_information(std::span<const double> p1, std::span<const double> p2,
                                  double tol = kDefaultAlphaTol);
MeasureValue chernoff_information(const DiscreteDistribution& p1, const DiscreteDistribution& p2,
                                  double tol = kDefaultAlphaTol);

MeasureValue chernoff_mi(const JointDistribution& joint, double tol = kDefaultAlphaTol);

/// (1-e) log((1-e)/q) + e log(e/(1-q)), q = l(1-e) + (1-l)e.
MeasureValue shannon_paper_bsc(const BscParams& params);

/// -min_alpha log[(1-e)^alpha q^(1-alpha) + e^alpha (1-q)^(1-alpha)].
MeasureValue chernoff_paper_bsc(const BscParams& params, double tol = kDefaultAlphaTol);

MeasureValue evaluate(MeasureKind kind, const BscParams& params, double tol = kDefaultAlphaTol);
/// Throws InvalidArgument for the BSC-only kinds.
MeasureValue evaluate(MeasureKind kind, const MscParams& params, double tol = kDefaultAlphaTol);

}  // namespace chinfo
