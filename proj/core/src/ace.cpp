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

#include "chinfo/ace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "chinfo/errors.hpp"

namespace chinfo {

namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

// Indices of `x` sorted ascending, ties in index order.
std::vector<std::size_t> sorted_order(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  return order;
}

// Binned means along a precomputed ascending order of x.
SmoothedCurve binned_means(std::span<const double> x, std::span<const double> z,
                           std::span<const std::size_t> order, int bins, std::string name) {
  const std::size_t n = order.size();
  if (n < 2) throw InvalidArgument("conditional expectation needs at least two samples");

  SmoothedCurve out;
  std::size_t nb = static_cast<std::size_t>(bins);
  if (n < nb) {
    nb = std::max<std::size_t>(2, n / 5);
    out.bins_reduced = true;
  }

  std::vector<double> sum_x, sum_z, knots, values;
  std::vector<std::size_t> counts;
  sum_x.reserve(nb);
  sum_z.reserve(nb);
  counts.reserve(nb);
  knots.reserve(nb);
  values.reserve(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * n / nb;
    const std::size_t hi = (b + 1) * n / nb;
    double sx = 0.0, sz = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      sx += x[order[i]];
      sz += z[order[i]];
    }
    const std::size_t cnt = hi - lo;
    const double knot = sx / static_cast<double>(cnt);
    if (!knots.empty() && knot <= knots.back()) {
      sum_x.back() += sx;
      sum_z.back() += sz;
      counts.back() += cnt;
      const auto c = static_cast<double>(counts.back());
      knots.back() = std::max(knots.back(), sum_x.back() / c);
      values.back() = sum_z.back() / c;
      continue;
    }
    sum_x.push_back(sx);
    sum_z.push_back(sz);
    counts.push_back(cnt);
    knots.push_back(knot);
    values.push_back(sz / static_cast<double>(cnt));
  }
  out.effective_bins = static_cast<int>(knots.size());
  out.curve = TransformationCurve(std::move(name), std::move(knots), std::move(values));
  return out;
}

// Evaluates `curve` at x[order[i]] for ascending order, writing into out.
void evaluate_sorted(const TransformationCurve& curve, std::span<const double> x,
                     std::span<const std::size_t> order, std::vector<double>& out) {
  const auto knots = curve.knots();
  const auto values = curve.values();
  const std::size_t m = knots.size();
  std::size_t seg = 0;
  for (std::size_t idx : order) {
    const double xv = x[idx];
    if (xv <= knots[0]) {
      out[idx] = values[0];
      continue;
    }
    if (xv >= knots[m - 1]) {
      out[idx] = values[m - 1];
      continue;
    }
    while (knots[seg + 1] < xv) ++seg;
    const double t = (xv - knots[seg]) / (knots[seg + 1] - knots[seg]);
    out[idx] = values[seg] + t * (values[seg + 1] - values[seg]);
  }
}

struct FitState {
  std::vector<double> theta;
  TransformationCurve theta_curve;
  std::vector<std::vector<double>> phi;
  std::vector<TransformationCurve> phi_curves;
  std::vector<double> phi_sum;
  double e2 = 1.0;
};

void recompute_sum(FitState& s) {
  std::fill(s.phi_sum.begin(), s.phi_sum.end(), 0.0);
  for (const auto& col : s.phi)
    for (std::size_t i = 0; i < col.size(); ++i) s.phi_sum[i] += col[i];
}

double residual_e2(const FitState& s) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < s.theta.size(); ++i) {
    const double r = s.theta[i] - s.phi_sum[i];
    num += r * r;
    den += s.theta[i] * s.theta[i];
  }
  return num / den;
}

// Centres and scales theta (and its curve) to zero mean and unit variance.
void standardize_theta(FitState& s) {
  const double m = mean_of(s.theta);
  double ss = 0.0;
  for (double v : s.theta) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / static_cast<double>(s.theta.size()));
  if (!(sd > 0.0)) throw DegenerateInput("theta transform has zero variance");
  for (double& v : s.theta) v = (v - m) / sd;
  s.theta_curve.rescale(m, 1.0 / sd);
}

class AceEngine {
 public:
  AceEngine(const Dataset& data, const AceConfig& config) : config_(config) {
    const std::size_t n = data.n();
    p_ = data.p();

    // Canonical row order: response, then predictors, ascending.
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const auto y = data.response();
    std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      if (y[a] != y[b]) return y[a] < y[b];
      for (std::size_t k = 0; k < data.p(); ++k) {
        const auto xk = data.predictor(k);
        if (xk[a] != xk[b]) return xk[a] < xk[b];
      }
      return false;
    });

    y_.resize(n);
    for (std::size_t i = 0; i < n; ++i) y_[i] = y[rows[i]];
    if (y_.front() == y_.back()) throw DegenerateInput("response has zero variance");

    x_.assign(p_, std::vector<double>(n));
    for (std::size_t k = 0; k < p_; ++k) {
      const auto xk = data.predictor(k);
      for (std::size_t i = 0; i < n; ++i) x_[k][i] = xk[rows[i]];
      x_order_.push_back(sorted_order(x_[k]));
      phi_names_.push_back(phi_curve_name(data.predictor_names()[k]));
    }
    y_order_.resize(n);
    std::iota(y_order_.begin(), y_order_.end(), std::size_t{0});
    bins_ = config.resolve_bins(n);
  }

  AceResult run(const Dataset& data) {
    FitState state = initial_state();
    AceResult result;
    result.response_name = data.response_name();
    result.predictor_names = data.predictor_names();

    for (int outer = 0; outer < config_.max_outer; ++outer) {
      FitState candidate = state;
      if (outer > 0) update_theta(candidate);
      result.inner_sweeps += inner_loop(candidate);

      if (outer > 0 && candidate.e2 > state.e2) break;  // failed to decrease; keep previous
      const double improvement = state.e2 - candidate.e2;
      state = std::move(candidate);
      result.e2_trace.push_back(state.e2);
      if (outer > 0 && improvement < config_.tol) break;
    }

    if (pearson(state.theta, y_) < 0.0) {
      for (double& v : state.theta) v = -v;
      state.theta_curve.rescale(0.0, -1.0);
      for (std::size_t k = 0; k < p_; ++k) {
        for (double& v : state.phi[k]) v = -v;
        state.phi_curves[k].rescale(0.0, -1.0);
      }
      recompute_sum(state);
    }

    result.theta = std::move(state.theta_curve);
    result.phis = std::move(state.phi_curves);
    result.e2 = state.e2;
    result.correlation = pearson(state.theta, state.phi_sum);
    result.outer_iterations = static_cast<int>(result.e2_trace.size());
    return result;
  }

 private:
  FitState initial_state() const {
    const std::size_t n = y_.size();
    FitState s;
    s.theta = y_;
    s.theta_curve = TransformationCurve(kThetaCurveName, {y_.front(), y_.back()},
                                        {y_.front(), y_.back()});
    standardize_theta(s);
    s.phi.assign(p_, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < p_; ++k) {
      const double lo = x_[k][x_order_[k].front()];
      const double hi = x_[k][x_order_[k].back()];
      if (lo < hi) {
        s.phi_curves.emplace_back(phi_names_[k], std::vector<double>{lo, hi},
                                  std::vector<double>{0.0, 0.0});
      } else {
        s.phi_curves.emplace_back(phi_names_[k], std::vector<double>{lo}, std::vector<double>{0.0});
      }
    }
    s.phi_sum.assign(n, 0.0);
    s.e2 = residual_e2(s);
    return s;
  }

  // Returns the number of accepted sweeps.
  int inner_loop(FitState& s) const {
    const std::size_t n = y_.size();
    std::vector<double> partial(n);
    int sweeps = 0;
    for (int it = 0; it < config_.max_inner; ++it) {
      FitState before = s;
      for (std::size_t k = 0; k < p_; ++k) {
        for (std::size_t i = 0; i < n; ++i) partial[i] = s.theta[i] - s.phi_sum[i] + s.phi[k][i];
        auto smoothed = binned_means(x_[k], partial, x_order_[k], bins_, phi_names_[k]);
        auto& col = s.phi[k];
        evaluate_sorted(smoothed.curve, x_[k], x_order_[k], col);
        const double m = mean_of(col);
        for (double& v : col) v -= m;
        smoothed.curve.rescale(m, 1.0);
        s.phi_curves[k] = std::move(smoothed.curve);
        recompute_sum(s);
      }
      s.e2 = residual_e2(s);
      if (s.e2 > before.e2) {
        s = std::move(before);
        break;
      }
      ++sweeps;
      if (before.e2 - s.e2 < config_.tol) break;
    }
    return sweeps;
  }

  void update_theta(FitState& s) const {
    auto smoothed = binned_means(y_, s.phi_sum, y_order_, bins_, kThetaCurveName);
    s.theta_curve = std::move(smoothed.curve);
    evaluate_sorted(s.theta_curve, y_, y_order_, s.theta);
    standardize_theta(s);
    s.e2 = residual_e2(s);
  }

  AceConfig config_;
  std::size_t p_ = 0;
  int bins_ = 0;
  std::vector<double> y_;
  std::vector<std::size_t> y_order_;
  std::vector<std::vector<double>> x_;
  std::vector<std::vector<std::size_t>> x_order_;
  std::vector<std::string> phi_names_;
};

}  // namespace

Dataset::Dataset(std::vector<std::string> predictor_names,
                 std::vector<std::vector<double>> predictors, std::string response_name,
                 std::vector<double> response, std::size_t resampled)
    : predictor_names_(std::move(predictor_names)),
      predictors_(std::move(predictors)),
      response_name_(std::move(response_name)),
      response_(std::move(response)),
      resampled_(resampled) {
  if (predictors_.empty()) throw InvalidArgument("dataset needs at least one predictor");
  if (predictor_names_.size() != predictors_.size()) {
    throw InvalidArgument("dataset predictor names do not match predictor count");
  }
  for (const auto& col : predictors_) {
    if (col.size() != response_.size()) throw InvalidArgument("dataset columns differ in length");
    for (double v : col)
      if (!std::isfinite(v)) throw InvalidArgument("dataset predictor has a non-finite entry");
  }
  for (double v : response_)
    if (!std::isfinite(v)) throw InvalidArgument("dataset response has a non-finite entry");
  if (response_.size() < 10 * predictors_.size()) {
    throw InvalidArgument("dataset needs at least 10 samples per predictor");
  }
}

std::vector<std::string> Dataset::column_names() const {
  std::vector<std::string> names = predictor_names_;
  names.push_back(response_name_);
  return names;
}

TransformationCurve::TransformationCurve(std::string name, std::vector<double> knots,
                                         std::vector<double> values)
    : name_(std::move(name)), knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.empty()) throw InvalidArgument("curve needs at least one knot");
  if (knots_.size() != values_.size()) throw InvalidArgument("curve knots and values differ in length");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i]) || !std::isfinite(values_[i])) {
      throw InvalidArgument("curve has a non-finite entry");
    }
    if (i > 0 && !(knots_[i] > knots_[i - 1])) {
      throw InvalidArgument("curve knots must be strictly increasing");
    }
  }
}

double TransformationCurve::operator()(double x) const {
  if (x <= knots_.front()) return values_.front();
  if (x >= knots_.back()) return values_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const auto hi = static_cast<std::size_t>(it - knots_.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - knots_[lo]) / (knots_[hi] - knots_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

std::vector<double> TransformationCurve::evaluate(std::span<const double> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back((*this)(x));
  return out;
}

void TransformationCurve::rescale(double offset, double scale) {
  for (double& v : values_) v = (v - offset) * scale;
}

SmoothedCurve conditional_expectation(std::span<const double> x, std::span<const double> z,
                                      int bins) {
  if (x.size() != z.size()) throw InvalidArgument("conditional expectation inputs differ in length");
  if (bins < 1) throw InvalidArgument("bin count must be positive");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(z[i])) {
      throw InvalidArgument("conditional expectation inputs must be finite");
    }
  }
  const auto order = sorted_order(x);
  return binned_means(x, z, order, bins, "E[z|x]");
}

void AceConfig::validate() const {
  if (bins != 0 && bins < 5) throw InvalidArgument("ACE bin count must be at least 5");
  if (!(tol > 0.0)) throw InvalidArgument("ACE tolerance must be positive");
  if (max_outer < 1 || max_inner < 1) throw InvalidArgument("ACE iteration caps must be positive");
}

int AceConfig::resolve_bins(std::size_t n) const {
  if (bins > 0) return bins;
  // 100 bins at n = 20000, growing as n^(1/3) so that the gap between
  // neighbouring bin means keeps pace with their sampling noise.
  const double scaled = 100.0 * std::cbrt(static_cast<double>(n) / 20000.0);
  return std::max(20, static_cast<int>(std::lround(scaled)));
}

std::string phi_curve_name(const std::string& predictor) { return "phi_" + predictor; }

AceResult ace_fit(const Dataset& data, const AceConfig& config) {
  config.validate();
  AceEngine engine(data, config);
  return engine.run(data);
}

AceDiagnostics diagnose(const AceResult& result, const Dataset& data) {
  if (result.phis.size() != data.p()) throw InvalidArgument("result and dataset disagree on p");
  AceDiagnostics d;
  for (std::size_t i = 1; i < result.e2_trace.size(); ++i)
    if (result.e2_trace[i] > result.e2_trace[i - 1]) d.trace_non_increasing = false;
  d.identity_gap = std::abs(result.correlation * result.correlation + result.e2 - 1.0);

  const auto theta = result.theta.evaluate(data.response());
  d.theta_mean = mean_of(theta);
  double ss = 0.0;
  for (double v : theta) ss += (v - d.theta_mean) * (v - d.theta_mean);
  d.theta_variance = ss / static_cast<double>(theta.size());
  for (std::size_t k = 0; k < data.p(); ++k) {
    const auto phi = result.phis[k].evaluate(data.predictor(k));
    d.max_phi_mean = std::max(d.max_phi_mean, std::abs(mean_of(phi)));
  }
  return d;
}

double maximal_correlation(std::span<const double> x, std::span<const double> y,
                           const AceConfig& config) {
  if (x.size() != y.size()) throw InvalidArgument("maximal_correlation inputs differ in length");
  Dataset data({"x"}, {std::vector<double>(x.begin(), x.end())}, "y",
               std::vector<double>(y.begin(), y.end()));
  return ace_fit(data, config).correlation;
}

}  // namespace chinfo
