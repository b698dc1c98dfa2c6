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

#include "chinfo/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <string>
#include <utility>

#include "chinfo/channels.hpp"
#include "chinfo/errors.hpp"
#include "chinfo/rng.hpp"

namespace chinfo {

namespace {

std::vector<double> grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return g;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double population_sd(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

void standardize(std::vector<double>& v) {
  const double m = mean_of(v);
  const double sd = population_sd(v);
  for (double& x : v) x = sd > 0.0 ? (x - m) / sd : 0.0;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double increasing_fraction(std::span<const double> values, bool increasing) {
  if (values.size() < 2) return 1.0;
  std::size_t hits = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (increasing ? values[i] > values[i - 1] : values[i] < values[i - 1]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(values.size() - 1);
}

const TransformationCurve* find_phi(const AceResult& r, const std::string& predictor) {
  const std::string name = phi_curve_name(predictor);
  for (const auto& c : r.phis)
    if (c.name() == name) return &c;
  return nullptr;
}

std::pair<double, double> overlap(const TransformationCurve& a, const TransformationCurve& b) {
  const double lo = std::max(a.knots().front(), b.knots().front());
  const double hi = std::min(a.knots().back(), b.knots().back());
  if (!(lo < hi)) {
    throw InvalidArgument("curves '" + a.name() + "' have no overlapping knot range");
  }
  return {lo, hi};
}

CurveComparison compare_curves(const TransformationCurve& a, const TransformationCurve& b) {
  const auto [lo, hi] = overlap(a, b);
  const auto g = grid(lo, hi, kComparisonGrid);
  auto u = a.evaluate(g);
  auto v = b.evaluate(g);
  standardize(u);
  standardize(v);

  double dot = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) dot += u[i] * v[i];
  double corr = dot / static_cast<double>(g.size());

  CurveComparison out;
  out.curve = a.name();
  out.sign_aligned = corr >= 0.0;
  if (!out.sign_aligned) {
    for (double& x : v) x = -x;
    corr = -corr;
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) ss += (u[i] - v[i]) * (u[i] - v[i]);
  out.rms_difference = std::sqrt(ss / static_cast<double>(g.size()));
  out.curve_correlation = std::clamp(corr, -1.0, 1.0);
  return out;
}

double theta_agreement(const TransformationCurve& a, const TransformationCurve& b) {
  const auto [lo, hi] = overlap(a, b);
  const auto g = grid(lo, hi, kComparisonGrid);
  const auto u = a.evaluate(g);
  const auto v = b.evaluate(g);
  std::size_t agree = 0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (sign_of(u[i] - u[i - 1]) == sign_of(v[i] - v[i - 1])) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(g.size() - 1);
}

std::string label(const ExperimentConfig& c, MeasureKind k, std::string_view what) {
  return fmt::format("{}/{}/{}", to_string(c.channel), to_string(k), what);
}

void push(std::vector<GateResult>& out, std::string name, double value, bool passed,
          std::string threshold) {
  out.push_back({std::move(name), value, std::move(threshold), passed});
}

}  // namespace

std::string_view to_string(ChannelKind channel) {
  return channel == ChannelKind::bsc ? "bsc" : "msc";
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "bsc") return ChannelKind::bsc;
  if (name == "msc") return ChannelKind::msc;
  throw InvalidArgument("unknown channel '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::defaults(ChannelKind channel) {
  ExperimentConfig c;
  c.channel = channel;
  c.n = channel == ChannelKind::bsc ? 20000 : 60000;
  return c;
}

ExperimentConfig ExperimentConfig::with_paper_variant() const {
  if (channel != ChannelKind::bsc) {
    throw InvalidArgument("the per-row forms only exist for the BSC");
  }
  ExperimentConfig c = *this;
  c.measures = {MeasureKind::shannon_paper_bsc, MeasureKind::chernoff_paper_bsc};
  return c;
}

void ExperimentConfig::validate() const {
  const std::size_t p = channel == ChannelKind::bsc ? 2 : static_cast<std::size_t>(std::max(m, 2));
  if (n < 10 * p) throw InvalidArgument("experiments need at least 10 samples per predictor");
  if (measures.empty()) throw InvalidArgument("experiment needs at least one measure");
  for (std::size_t i = 0; i < measures.size(); ++i) {
    for (std::size_t j = i + 1; j < measures.size(); ++j)
      if (measures[i] == measures[j]) throw InvalidArgument("duplicate measure in experiment");
    if (channel == ChannelKind::msc && is_bsc_only(measures[i])) {
      throw InvalidArgument(std::string(to_string(measures[i])) + " is only defined for the BSC");
    }
  }
  if (channel == ChannelKind::msc && m < 2) throw InvalidArgument("MSC alphabet size must be >= 2");
  if (!(alpha_tol > 0.0)) throw InvalidArgument("alpha tolerance must be positive");
  ace.validate();
}

std::vector<std::string> predictor_names(ChannelKind channel, int m) {
  std::vector<std::string> names{"lambda"};
  if (channel == ChannelKind::msc) {
    for (int i = 2; i < m; ++i) names.push_back("lambda" + std::to_string(i));
  }
  names.emplace_back("epsilon");
  return names;
}

std::string response_column_name(MeasureKind kind) { return "y_" + std::string(to_string(kind)); }

std::vector<Dataset> build_datasets(const ExperimentConfig& config) {
  config.validate();
  const auto names = predictor_names(config.channel, config.m);
  const std::size_t p = names.size();
  const std::size_t kinds = config.measures.size();

  std::vector<std::vector<double>> columns(p);
  std::vector<std::vector<double>> responses(kinds);
  for (auto& c : columns) c.reserve(config.n);
  for (auto& r : responses) r.reserve(config.n);

  std::vector<double> row(p);
  std::vector<double> ys(kinds);
  std::size_t resampled = 0;
  auto accept = [&] {
    for (double y : ys)
      if (!std::isfinite(y)) return false;
    for (std::size_t k = 0; k < p; ++k) columns[k].push_back(row[k]);
    for (std::size_t k = 0; k < kinds; ++k) responses[k].push_back(ys[k]);
    return true;
  };

  if (config.channel == ChannelKind::bsc) {
    BscParamSampler sampler(config.seed);
    while (columns[0].size() < config.n) {
      const BscParams params = sampler.next();
      row = {params.lambda, params.epsilon};
      for (std::size_t k = 0; k < kinds; ++k)
        ys[k] = evaluate(config.measures[k], params, config.alpha_tol).value;
      if (!accept()) ++resampled;
    }
  } else {
    MscParamSampler sampler(config.seed, config.m, config.simplex);
    while (columns[0].size() < config.n) {
      const MscParams params = sampler.next();
      for (std::size_t k = 0; k + 1 < p; ++k) row[k] = params.lambdas[k];
      row[p - 1] = params.epsilon;
      for (std::size_t k = 0; k < kinds; ++k)
        ys[k] = evaluate(config.measures[k], params, config.alpha_tol).value;
      if (!accept()) ++resampled;
    }
  }

  std::vector<Dataset> out;
  out.reserve(kinds);
  for (std::size_t k = 0; k < kinds; ++k) {
    out.emplace_back(names, columns, response_column_name(config.measures[k]),
                     std::move(responses[k]), resampled);
  }
  return out;
}

Dataset build_dataset(const ExperimentConfig& config, MeasureKind kind) {
  ExperimentConfig single = config;
  single.measures = {kind};
  return std::move(build_datasets(single).front());
}

ComparisonReport compare_decompositions(const AceResult& a, const AceResult& b) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (a.phis.size() != b.phis.size() || sorted(a.predictor_names) != sorted(b.predictor_names)) {
    throw InvalidArgument("decompositions have different predictors");
  }
  ComparisonReport report;
  report.a = a.response_name;
  report.b = b.response_name;
  for (const auto& name : a.predictor_names) {
    const auto* ca = find_phi(a, name);
    const auto* cb = find_phi(b, name);
    if (!ca || !cb) throw InvalidArgument("missing phi curve for predictor '" + name + "'");
    report.curves.push_back(compare_curves(*ca, *cb));
  }
  report.theta_monotone_fraction = theta_agreement(a.theta, b.theta);
  return report;
}

OrderingSummary compare_responses(const Dataset& a, const Dataset& b) {
  if (a.n() != b.n()) throw InvalidArgument("datasets differ in sample count");
  OrderingSummary s;
  const auto ya = a.response();
  const auto yb = b.response();
  double total = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i) {
    const double d = ya[i] - yb[i];
    total += d;
    if (d < 0.0) {
      ++s.a_less;
    } else if (d > 0.0) {
      ++s.a_greater;
    } else {
      ++s.equal;
    }
  }
  s.mean_difference = total / static_cast<double>(a.n());
  return s;
}

ShapeReport shape_checks(const AceResult& result, ChannelKind channel) {
  ShapeReport s;
  s.channel = channel;
  s.theta_increasing_fraction = increasing_fraction(result.theta.values(), true);

  const auto* eps = find_phi(result, "epsilon");
  if (channel == ChannelKind::bsc) {
    if (eps && eps->size() >= 2) {
      const auto knots = eps->knots();
      const auto full = eps->evaluate(grid(knots.front(), knots.back(), kComparisonGrid));
      const double sd = population_sd(full);
      const double lo = std::max(knots.front(), 1.0 - knots.back());
      const double hi = std::min(knots.back(), 1.0 - knots.front());
      if (sd > 0.0 && lo < hi) {
        const double window =
            2.0 * (knots.back() - knots.front()) / static_cast<double>(knots.size() - 1);
        double worst = 0.0;
        double worst_resolved = 0.0;
        for (double e : grid(lo, hi, kComparisonGrid)) {
          const double gap = std::abs((*eps)(e) - (*eps)(1.0 - e));
          worst = std::max(worst, gap);
          if (std::abs(e - 0.5) >= window) worst_resolved = std::max(worst_resolved, gap);
        }
        s.phi_epsilon_asymmetry = worst_resolved / sd;
        s.phi_epsilon_asymmetry_full = worst / sd;
      }
    }
    if (const auto* lam = find_phi(result, "lambda")) {
      s.phi_lambda_decreasing_fraction = increasing_fraction(lam->values(), false);
    }
  } else {
    if (eps) {
      const auto values = eps->values();
      const auto it = std::min_element(values.begin(), values.end());
      s.phi_epsilon_argmin = eps->knots()[static_cast<std::size_t>(it - values.begin())];
    }
    for (const auto& name : result.predictor_names) {
      if (name == "epsilon") continue;
      const auto* c = find_phi(result, name);
      if (!c) continue;
      const auto values = c->values();
      const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
      const double range = *mx - *mn;
      double flat = 0.0;
      for (std::size_t i = 0; i < c->size(); ++i)
        if (c->knots()[i] < 0.7) flat = std::max(flat, std::abs(values[i]));
      s.lambda_flatness.push_back(range > 0.0 ? flat / range : 0.0);
    }
  }
  return s;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = config;
  report.rng_algorithm = std::string(kRngAlgorithm);
  report.datasets = build_datasets(config);

  for (std::size_t k = 0; k < config.measures.size(); ++k) {
    const Dataset& data = report.datasets[k];
    MeasureRun run;
    run.kind = config.measures[k];
    run.resampled = data.resampled();
    const auto [mn, mx] = std::minmax_element(data.response().begin(), data.response().end());
    run.response_min = *mn;
    run.response_max = *mx;
    run.fit = ace_fit(data, config.ace);
    run.diagnostics = diagnose(run.fit, data);
    run.shape = shape_checks(run.fit, config.channel);
    report.runs.push_back(std::move(run));
  }

  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    for (std::size_t j = i + 1; j < report.runs.size(); ++j) {
      auto cmp = compare_decompositions(report.runs[i].fit, report.runs[j].fit);
      cmp.a = std::string(to_string(report.runs[i].kind));
      cmp.b = std::string(to_string(report.runs[j].kind));
      cmp.orderings = compare_responses(report.datasets[i], report.datasets[j]);
      report.comparisons.push_back(std::move(cmp));
    }
  }

  for (MeasureKind kind : config.measures) {
    double v = 0.0;
    if (config.channel == ChannelKind::bsc) {
      v = evaluate(kind, BscParams{0.5, 0.1}, config.alpha_tol).value;
    } else {
      MscParams p;
      p.m = config.m;
      p.lambdas.assign(static_cast<std::size_t>(config.m), 1.0 / config.m);
      p.epsilon = 0.1;
      v = evaluate(kind, p, config.alpha_tol).value;
    }
    report.reference_values.emplace_back(kind, v);
  }

  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<GateResult> acceptance_gates(const ExperimentReport& report) {
  using namespace gates;
  const auto& cfg = report.config;
  std::vector<GateResult> out;

  for (const auto& run : report.runs) {
    const auto& fit = run.fit;
    const auto& d = run.diagnostics;
    push(out, label(cfg, run.kind, "correlation"), fit.correlation,
         fit.correlation >= kMinCorrelation, fmt::format(">= {}", kMinCorrelation));
    push(out, label(cfg, run.kind, "e2"), fit.e2, fit.e2 <= kMaxE2, fmt::format("<= {}", kMaxE2));
    push(out, label(cfg, run.kind, "e2_trace_non_increasing"), d.trace_non_increasing ? 1.0 : 0.0,
         d.trace_non_increasing, "== 1");
    push(out, label(cfg, run.kind, "correlation2_plus_e2_gap"), d.identity_gap,
         d.identity_gap <= kMaxIdentityGap, fmt::format("<= {}", kMaxIdentityGap));
    const double theta_dev =
        std::max(std::abs(d.theta_mean), std::abs(d.theta_variance - 1.0));
    push(out, label(cfg, run.kind, "theta_standardized"), theta_dev, theta_dev <= 1e-6, "<= 1e-06");
    push(out, label(cfg, run.kind, "phi_zero_mean"), d.max_phi_mean, d.max_phi_mean <= 1e-8,
         "<= 1e-08");
    push(out, label(cfg, run.kind, "theta_increasing_fraction"), run.shape.theta_increasing_fraction,
         run.shape.theta_increasing_fraction >= kMinMonotoneFraction,
         fmt::format(">= {}", kMinMonotoneFraction));

    if (cfg.channel == ChannelKind::bsc) {
      const double asym = run.shape.phi_epsilon_asymmetry.value_or(INFINITY);
      push(out, label(cfg, run.kind, "phi_epsilon_asymmetry"), asym, asym <= kMaxPhiAsymmetry,
           fmt::format("<= {}", kMaxPhiAsymmetry));
      if (is_bsc_only(run.kind)) {
        const double dec = run.shape.phi_lambda_decreasing_fraction.value_or(0.0);
        push(out, label(cfg, run.kind, "phi_lambda_decreasing_fraction"), dec,
             dec >= kMinMonotoneFraction, fmt::format(">= {}", kMinMonotoneFraction));
      }
    } else {
      const double at = run.shape.phi_epsilon_argmin.value_or(NAN);
      push(out, label(cfg, run.kind, "phi_epsilon_argmin"), at,
           at >= kPhiEpsilonArgminLo && at <= kPhiEpsilonArgminHi,
           fmt::format("in [{:.2f}, {:.2f}]", kPhiEpsilonArgminLo, kPhiEpsilonArgminHi));
    }
  }

  for (const auto& cmp : report.comparisons) {
    for (const auto& c : cmp.curves) {
      const std::string base =
          fmt::format("{}/{}~{}/{}", to_string(cfg.channel), cmp.a, cmp.b, c.curve);
      push(out, base + "/curve_correlation", c.curve_correlation,
           c.curve_correlation >= kMinCurveCorrelation, fmt::format(">= {}", kMinCurveCorrelation));
      push(out, base + "/rms_difference", c.rms_difference,
           c.rms_difference <= kMaxRmsDifference, fmt::format("<= {}", kMaxRmsDifference));
    }
  }
  return out;
}

}  // namespace chinfo
