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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chinfo/ace.hpp"
#include "chinfo/measures.hpp"

namespace chinfo {

enum class ChannelKind { bsc, msc };

std::string_view to_string(ChannelKind channel);
ChannelKind parse_channel_kind(std::string_view name);

/// Acceptance thresholds shared by `run-paper` and the acceptance suite.
namespace gates {
inline constexpr double kMinCorrelation = 0.995;
inline constexpr double kMaxE2 = 0.01;
inline constexpr double kMaxIdentityGap = 5e-3;
inline constexpr double kMinCurveCorrelation = 0.98;
inline constexpr double kMaxRmsDifference = 0.1;
inline constexpr double kMaxPhiAsymmetry = 0.1;
inline constexpr double kMinMonotoneFraction = 0.95;
inline constexpr double kPhiEpsilonArgminLo = 0.70;
inline constexpr double kPhiEpsilonArgminHi = 0.80;
}  // namespace gates

/// Published reference correlations for the BSC and MSC experiments.
struct PaperTargets {
  double bsc_shannon = 0.9994;
  double bsc_chernoff = 0.9991;
  double msc_shannon = 0.9999;
  double msc_chernoff = 0.9999;
};

struct ExperimentConfig {
  ChannelKind channel = ChannelKind::bsc;
  std::size_t n = 20000;
  std::uint64_t seed = 1;
  std::vector<MeasureKind> measures{MeasureKind::shannon_mi, MeasureKind::chernoff_mi};
  AceConfig ace;
  /// MSC alphabet size; ignored for BSC.
  int m = 4;
  /// MSC input sampling; ignored for BSC.
  SimplexScheme simplex = SimplexScheme::rejection;
  double alpha_tol = kDefaultAlphaTol;

  /// n = 20000 for BSC, 60000 for MSC; definitional measure pair.
  static ExperimentConfig defaults(ChannelKind channel);
  /// Same config measuring the per-row BSC forms instead.
  ExperimentConfig with_paper_variant() const;

  void validate() const;
};

/// Column names used for the channel parameters: lambda, [lambda2, ...,]
/// epsilon. lambda_m is never a column since it is fixed by the others.
std::vector<std::string> predictor_names(ChannelKind channel, int m);
std::string response_column_name(MeasureKind kind);

/// One dataset per configured measure, all sharing the same parameter rows.
/// Parameters are drawn first from the seed, then each measure is evaluated;
/// a row whose response is non-finite for any measure is replaced by the next
/// draw from the same stream and counted in Dataset::resampled().
std::vector<Dataset> build_datasets(const ExperimentConfig& config);
Dataset build_dataset(const ExperimentConfig& config, MeasureKind kind);

struct CurveComparison {
  std::string curve;
  double rms_difference = 0.0;
  double curve_correlation = 1.0;
  /// True when the two curves already agreed in sign; false when b's curve
  /// was negated before scoring.
  bool sign_aligned = false;
};

/// Per-sample sign of (Y_a - Y_b).
struct OrderingSummary {
  std::size_t a_less = 0;
  std::size_t equal = 0;
  std::size_t a_greater = 0;
  double mean_difference = 0.0;
};

struct ComparisonReport {
  std::string a;
  std::string b;
  std::vector<CurveComparison> curves;
  /// Share of adjacent grid steps where both thetas move the same way.
  double theta_monotone_fraction = 1.0;
  std::optional<OrderingSummary> orderings;
};

/// Number of points in the common comparison grid.
inline constexpr std::size_t kComparisonGrid = 200;

/// Compares the phi curves of two fits predictor by predictor. Each pair is
/// evaluated on a 200-point grid over the intersection of the two knot
/// ranges, standardized over that grid, sign-aligned, and then scored.
/// Theta curves are only compared for direction of movement. Throws
/// InvalidArgument when predictor names differ.
ComparisonReport compare_decompositions(const AceResult& a, const AceResult& b);

OrderingSummary compare_responses(const Dataset& a, const Dataset& b);

struct ShapeReport {
  ChannelKind channel = ChannelKind::bsc;
  double theta_increasing_fraction = 0.0;
  // BSC
  std::optional<double> phi_epsilon_asymmetry;
  /// Same statistic with no points dropped near the axis.
  std::optional<double> phi_epsilon_asymmetry_full;
  std::optional<double> phi_lambda_decreasing_fraction;
  // MSC
  std::optional<double> phi_epsilon_argmin;
  /// Per lambda curve: max |phi| over knots below 0.7, relative to the
  /// curve's full range.
  std::vector<double> lambda_flatness;
};

/// Curve-shape statistics. For BSC: max |phi_eps(e) - phi_eps(1 - e)| over a
/// 200-point grid symmetric about 0.5, in units of phi_eps's standard
/// deviation, skipping pairs within two mean knot spacings of 0.5 where both
/// points fall in the smoothing window over the cusp of phi_eps; plus the
/// share of decreasing steps between adjacent phi_lambda knots. For MSC: the
/// epsilon knot at which phi_eps is smallest and the flatness of each lambda
/// curve. Both report the share of increasing steps between adjacent theta
/// knots.
ShapeReport shape_checks(const AceResult& result, ChannelKind channel);

struct MeasureRun {
  MeasureKind kind = MeasureKind::shannon_mi;
  std::size_t resampled = 0;
  double response_min = 0.0;
  double response_max = 0.0;
  AceResult fit;
  AceDiagnostics diagnostics;
  ShapeReport shape;
};

struct GateResult {
  std::string name;
  double value = 0.0;
  std::string threshold;
  bool passed = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string rng_algorithm;
  std::vector<Dataset> datasets;
  std::vector<MeasureRun> runs;
  std::vector<ComparisonReport> comparisons;
  /// Measures evaluated at lambda = 0.5 (uniform input), epsilon = 0.1.
  std::vector<std::pair<MeasureKind, double>> reference_values;
  double wall_clock_seconds = 0.0;
};

/// Builds datasets, fits every measure, and compares every unordered pair.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Acceptance gates for one experiment: fit quality, ACE invariants, the
/// Shannon/Chernoff handshake on phi curves, and curve shapes. The
/// phi_lambda monotonicity gate only applies to the per-row BSC forms.
std::vector<GateResult> acceptance_gates(const ExperimentReport& report);

}  // namespace chinfo
