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

#include "chinfo/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "chinfo/errors.hpp"

namespace chinfo {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

double parse_double(const std::string& cell, std::size_t line_no) {
  const std::string t = trim(cell);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw InvalidArgument(fmt::format("line {}: '{}' is not a number", line_no, t));
  }
  return v;
}

ordered_json number(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  return v;
}

ordered_json curves_json(const ComparisonReport& r) {
  ordered_json j;
  j["a"] = r.a;
  j["b"] = r.b;
  j["curves"] = ordered_json::array();
  for (const auto& c : r.curves) {
    j["curves"].push_back({{"curve", c.curve},
                           {"rms_difference", number(c.rms_difference)},
                           {"curve_correlation", number(c.curve_correlation)},
                           {"sign_aligned", c.sign_aligned}});
  }
  j["theta_monotone_fraction"] = number(r.theta_monotone_fraction);
  if (r.orderings) {
    const auto& o = *r.orderings;
    const std::size_t total = o.a_less + o.equal + o.a_greater;
    j["orderings"] = {{"a_less", o.a_less},
                      {"equal", o.equal},
                      {"a_greater", o.a_greater},
                      {"fraction_a_less", number(static_cast<double>(o.a_less) / total)},
                      {"mean_difference", number(o.mean_difference)},
                      {"a_invariably_smaller", o.a_less == total}};
  }
  return j;
}

ordered_json shape_json(const ShapeReport& s) {
  ordered_json j;
  j["theta_increasing_fraction"] = number(s.theta_increasing_fraction);
  if (s.phi_epsilon_asymmetry) j["phi_epsilon_asymmetry"] = number(*s.phi_epsilon_asymmetry);
  if (s.phi_epsilon_asymmetry_full) {
    j["phi_epsilon_asymmetry_full"] = number(*s.phi_epsilon_asymmetry_full);
  }
  if (s.phi_lambda_decreasing_fraction) {
    j["phi_lambda_decreasing_fraction"] = number(*s.phi_lambda_decreasing_fraction);
  }
  if (s.phi_epsilon_argmin) j["phi_epsilon_argmin"] = number(*s.phi_epsilon_argmin);
  if (!s.lambda_flatness.empty()) {
    j["lambda_flatness"] = ordered_json::array();
    for (double f : s.lambda_flatness) j["lambda_flatness"].push_back(number(f));
  }
  return j;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

void write_dataset_csv(std::ostream& out, std::span<const Dataset> datasets) {
  if (datasets.empty()) throw InvalidArgument("no datasets to write");
  const Dataset& first = datasets.front();
  for (const auto& d : datasets) {
    if (d.predictor_names() != first.predictor_names() || d.n() != first.n()) {
      throw InvalidArgument("datasets do not share predictor columns");
    }
    for (std::size_t k = 0; k < d.p(); ++k) {
      if (!std::equal(d.predictor(k).begin(), d.predictor(k).end(), first.predictor(k).begin())) {
        throw InvalidArgument("datasets do not share predictor columns");
      }
    }
  }

  std::string header;
  for (const auto& name : first.predictor_names()) header += name + ",";
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    header += datasets[i].response_name();
    header += i + 1 < datasets.size() ? "," : "\n";
  }
  out << header;

  std::string row;
  for (std::size_t r = 0; r < first.n(); ++r) {
    row.clear();
    for (std::size_t k = 0; k < first.p(); ++k) {
      row += format_number(first.predictor(k)[r]);
      row += ',';
    }
    for (std::size_t i = 0; i < datasets.size(); ++i) {
      row += format_number(datasets[i].response()[r]);
      row += i + 1 < datasets.size() ? ',' : '\n';
    }
    out << row;
  }
}

std::size_t CsvTable::column_index(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InvalidArgument("unknown column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv_table(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("CSV input is empty");
  for (auto& h : split(line)) t.header.push_back(trim(h));
  t.columns.resize(t.header.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw InvalidArgument(fmt::format("line {}: expected {} fields, found {}", line_no,
                                        t.header.size(), cells.size()));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      t.columns[i].push_back(parse_double(cells[i], line_no));
    }
  }
  return t;
}

void write_curves_csv(std::ostream& out, const AceResult& result) {
  std::vector<const TransformationCurve*> curves{&result.theta};
  for (const auto& c : result.phis) curves.push_back(&c);
  std::sort(curves.begin(), curves.end(),
            [](const auto* a, const auto* b) { return a->name() < b->name(); });
  out << "curve_name,knot,value\n";
  for (const auto* c : curves) {
    for (std::size_t i = 0; i < c->size(); ++i) {
      out << c->name() << ',' << format_number(c->knots()[i]) << ','
          << format_number(c->values()[i]) << '\n';
    }
  }
}

AceResult read_curves_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("curves CSV is empty");
  if (trim(line) != "curve_name,knot,value") {
    throw InvalidArgument("curves CSV must start with 'curve_name,knot,value'");
  }
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> tables;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 3) throw InvalidArgument(fmt::format("line {}: expected 3 fields", line_no));
    auto& [knots, values] = tables[trim(cells[0])];
    knots.push_back(parse_double(cells[1], line_no));
    values.push_back(parse_double(cells[2], line_no));
  }

  AceResult r;
  bool have_theta = false;
  for (auto& [name, kv] : tables) {
    TransformationCurve curve(name, std::move(kv.first), std::move(kv.second));
    if (name == kThetaCurveName) {
      r.theta = std::move(curve);
      have_theta = true;
    } else if (name.rfind("phi_", 0) == 0) {
      r.predictor_names.push_back(name.substr(4));
      r.phis.push_back(std::move(curve));
    } else {
      throw InvalidArgument("unexpected curve '" + name + "'");
    }
  }
  if (!have_theta) throw InvalidArgument("curves CSV has no theta curve");
  if (r.phis.empty()) throw InvalidArgument("curves CSV has no phi curves");
  return r;
}

std::string ace_summary_json(const AceResult& result) {
  ordered_json j;
  j["response"] = result.response_name;
  j["predictors"] = result.predictor_names;
  j["correlation"] = number(result.correlation);
  j["e2"] = number(result.e2);
  j["outer_iterations"] = result.outer_iterations;
  j["inner_sweeps"] = result.inner_sweeps;
  j["e2_trace"] = ordered_json::array();
  for (double v : result.e2_trace) j["e2_trace"].push_back(number(v));
  return j.dump(2) + "\n";
}

std::string comparison_json(const ComparisonReport& report) { return curves_json(report).dump(2) + "\n"; }

std::string measure_json(MeasureKind kind, const MeasureValue& value) {
  ordered_json j;
  j["measure"] = to_string(kind);
  j["value"] = number(value.reported());
  j["log_base"] = value.log_base == LogBase::bits ? "bits" : "nats";
  if (value.alpha_star) j["alpha_star"] = number(*value.alpha_star);
  return j.dump(2) + "\n";
}

std::string report_json(const ExperimentReport& report, std::span<const GateResult> gates) {
  const auto& cfg = report.config;
  ordered_json j;

  ordered_json config;
  config["channel"] = to_string(cfg.channel);
  config["n"] = cfg.n;
  config["seed"] = cfg.seed;
  config["measures"] = ordered_json::array();
  for (auto k : cfg.measures) config["measures"].push_back(to_string(k));
  config["ace"] = {{"bins", cfg.ace.resolve_bins(cfg.n)},
                   {"tol", cfg.ace.tol},
                   {"max_outer", cfg.ace.max_outer},
                   {"max_inner", cfg.ace.max_inner}};
  if (cfg.channel == ChannelKind::msc) config["m"] = cfg.m;
  config["alpha_tol"] = cfg.alpha_tol;
  j["config"] = config;

  j["rng_algorithm"] = report.rng_algorithm;
  ordered_json meta;
  meta["log_base"] = "nats";
  meta["measure_reading"] =
      std::any_of(cfg.measures.begin(), cfg.measures.end(), is_bsc_only) ? "paper_variant"
                                                                         : "definitional";
  if (cfg.channel == ChannelKind::msc) {
    meta["m_inferred"] = true;
    meta["simplex_sampling"] = to_string(cfg.simplex);
  }
  j["metadata"] = meta;

  j["ace_results"] = ordered_json::array();
  for (const auto& run : report.runs) {
    ordered_json r;
    r["measure"] = to_string(run.kind);
    r["correlation"] = number(run.fit.correlation);
    r["e2"] = number(run.fit.e2);
    r["outer_iterations"] = run.fit.outer_iterations;
    r["inner_sweeps"] = run.fit.inner_sweeps;
    r["e2_trace"] = ordered_json::array();
    for (double v : run.fit.e2_trace) r["e2_trace"].push_back(number(v));
    r["dataset"] = {{"n", cfg.n},
                    {"resampled", run.resampled},
                    {"response_min", number(run.response_min)},
                    {"response_max", number(run.response_max)}};
    r["invariants"] = {{"e2_trace_non_increasing", run.diagnostics.trace_non_increasing},
                       {"identity_gap", number(run.diagnostics.identity_gap)},
                       {"theta_mean", number(run.diagnostics.theta_mean)},
                       {"theta_variance", number(run.diagnostics.theta_variance)},
                       {"max_phi_mean", number(run.diagnostics.max_phi_mean)}};
    r["shape"] = shape_json(run.shape);
    j["ace_results"].push_back(r);
  }

  j["comparisons"] = ordered_json::array();
  for (const auto& c : report.comparisons) j["comparisons"].push_back(curves_json(c));

  ordered_json ref;
  ref["lambda"] = cfg.channel == ChannelKind::bsc ? ordered_json(0.5) : ordered_json("uniform");
  ref["epsilon"] = 0.1;
  for (const auto& [kind, v] : report.reference_values) ref[std::string(to_string(kind))] = number(v);
  j["reference_point"] = ref;

  j["gates"] = ordered_json::array();
  for (const auto& g : gates) {
    j["gates"].push_back(
        {{"name", g.name}, {"value", number(g.value)}, {"threshold", g.threshold}, {"passed", g.passed}});
  }

  const PaperTargets targets;
  j["paper_targets"] = {
      {"bsc", {{"shannon", targets.bsc_shannon}, {"chernoff", targets.bsc_chernoff}}},
      {"msc", {{"shannon", targets.msc_shannon}, {"chernoff", targets.msc_chernoff}}}};
  return j.dump(2) + "\n";
}

std::string timing_json(const ExperimentReport& report) {
  ordered_json j;
  j["channel"] = to_string(report.config.channel);
  j["wall_clock_seconds"] = report.wall_clock_seconds;
  return j.dump(2) + "\n";
}

}  // namespace chinfo
