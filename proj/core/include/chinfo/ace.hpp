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
#include <span>
#include <string>
#include <vector>

namespace chinfo {

/// n samples of p predictors and one response, stored column-wise.
class Dataset {
 public:
  /// Throws InvalidArgument on ragged columns, non-finite entries, p = 0,
  /// a name count that does not match, or fewer than 10 samples per predictor.
  Dataset(std::vector<std::string> predictor_names, std::vector<std::vector<double>> predictors,
          std::string response_name, std::vector<double> response, std::size_t resampled = 0);

  std::size_t n() const noexcept { return response_.size(); }
  std::size_t p() const noexcept { return predictors_.size(); }

  std::span<const double> predictor(std::size_t k) const { return predictors_.at(k); }
  std::span<const double> response() const noexcept { return response_; }

  const std::vector<std::string>& predictor_names() const noexcept { return predictor_names_; }
  const std::string& response_name() const noexcept { return response_name_; }
  /// Predictor names followed by the response name.
  std::vector<std::string> column_names() const;

  /// Rows that were redrawn because the response came out non-finite.
  std::size_t resampled() const noexcept { return resampled_; }

 private:
  std::vector<std::string> predictor_names_;
  std::vector<std::vector<double>> predictors_;
  std::string response_name_;
  std::vector<double> response_;
  std::size_t resampled_;
};

/// Piecewise-linear lookup table, constant beyond the end knots.
class TransformationCurve {
 public:
  TransformationCurve() = default;
  /// Knots must be strictly increasing and match `values` in length.
  TransformationCurve(std::string name, std::vector<double> knots, std::vector<double> values);

  const std::string& name() const noexcept { return name_; }
  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return knots_.size(); }

  double operator()(double x) const;
  std::vector<double> evaluate(std::span<const double> xs) const;

  /// values <- (values - offset) * scale
  void rescale(double offset, double scale);
  void rename(std::string name) { name_ = std::move(name); }

 private:
  std::string name_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

struct SmoothedCurve {
  TransformationCurve curve;
  int effective_bins = 0;
  /// Set when n < bins forced the bin count down to max(2, n / 5).
  bool bins_reduced = false;
};

/// Equal-frequency binned estimate of E[z | x]. Knots are within-bin means of
/// x and values within-bin means of z. Samples are ordered by x with ties
/// kept in input order; adjacent bins whose knots coincide are merged.
SmoothedCurve conditional_expectation(std::span<const double> x, std::span<const double> z,
                                      int bins);

struct AceConfig {
  /// 0 selects max(20, round(100 * (n / 20000)^(1/3))).
  int bins = 0;
  double tol = 1e-6;
  int max_outer = 50;
  int max_inner = 20;

  void validate() const;
  int resolve_bins(std::size_t n) const;
};

struct AceResult {
  std::string response_name;
  std::vector<std::string> predictor_names;
  TransformationCurve theta;
  std::vector<TransformationCurve> phis;
  double e2 = 1.0;
  double correlation = 0.0;
  int outer_iterations = 0;
  int inner_sweeps = 0;
  std::vector<double> e2_trace;
};

/// Name under which phi for `predictor` is stored and serialized.
std::string phi_curve_name(const std::string& predictor);
inline constexpr const char* kThetaCurveName = "theta";

/// Alternating conditional expectations.
///
/// theta starts as the standardized response and every phi at zero. The
/// inner loop sweeps k = 1..p, replacing phi_k by the smoothed conditional
/// expectation of theta - sum_{i != k} phi_i given X_k (re-centred to zero
/// mean). The outer loop then replaces theta by the standardized smoothed
/// E[sum phi | Y]. Each loop stops once e^2 improves by less than `tol` or
/// its cap is hit; a step that would increase e^2 is rolled back and ends
/// that loop, so `e2_trace` (one entry per outer iteration, taken after the
/// inner loop) never increases. Signs are finally flipped jointly so that
/// corr(theta(Y), Y) >= 0.
///
/// Samples are first put into a canonical order (sorted by response, then
/// predictors), so the result does not depend on the input row order.
AceResult ace_fit(const Dataset& data, const AceConfig& config = {});

/// Post-fit checks of the invariants ace_fit promises, evaluated on the
/// training data rather than assumed.
struct AceDiagnostics {
  bool trace_non_increasing = true;
  /// |correlation^2 + e2 - 1|
  double identity_gap = 0.0;
  double theta_mean = 0.0;
  double theta_variance = 0.0;
  /// Largest |mean phi_k(x_k)| over predictors.
  double max_phi_mean = 0.0;
};

AceDiagnostics diagnose(const AceResult& result, const Dataset& data);

/// Single-predictor ACE correlation between x and y.
double maximal_correlation(std::span<const double> x, std::span<const double> y,
                           const AceConfig& config = {});

}  // namespace chinfo
