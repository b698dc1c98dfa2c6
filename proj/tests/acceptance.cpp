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

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "chinfo/ace.hpp"
#include "chinfo/channels.hpp"
#include "chinfo/experiments.hpp"
#include "chinfo/io.hpp"
#include "chinfo/measures.hpp"
#include "chinfo/rng.hpp"

namespace fs = std::filesystem;
using namespace chinfo;

namespace {

struct Timed {
  ExperimentReport report;
  double seconds;
};

struct Verdict {
  bool ok = true;
  std::vector<std::string> notes;

  void check(bool cond, std::string note) {
    ok = ok && cond;
    notes.push_back((cond ? "  ok   " : "  MISS ") + std::move(note));
  }
  void info(std::string note) { notes.push_back("  info " + std::move(note)); }
};

int failures = 0;

void emit(int id, const std::string& title, const Verdict& v) {
  fmt::print("{} {} {}\n", v.ok ? "PASS" : "FAIL", id, title);
  for (const auto& n : v.notes) fmt::print("{}\n", n);
  std::fflush(stdout);
  if (!v.ok) ++failures;
}

Timed timed_run(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = run_experiment(cfg);
  const auto t1 = std::chrono::steady_clock::now();
  return {std::move(r), std::chrono::duration<double>(t1 - t0).count()};
}

std::string label(const ExperimentReport& r) {
  return fmt::format("{}/seed{}/{}", to_string(r.config.channel), r.config.seed,
                     is_bsc_only(r.config.measures.front()) ? "per-row" : "definitional");
}

std::vector<double> uniforms(UniformStream& u, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = u.next();
  return v;
}

std::vector<double> normals(UniformStream& u, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; i += 2) {
    const double r = std::sqrt(-2.0 * std::log(u.next()));
    const double t = 2.0 * 3.141592653589793 * u.next();
    v[i] = r * std::cos(t);
    if (i + 1 < n) v[i + 1] = r * std::sin(t);
  }
  return v;
}

std::vector<double> random_simplex(UniformStream& u, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = -std::log(u.next());
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= s;
  return v;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

void fit_quality(const std::vector<Timed>& runs, double time_limit, Verdict& v) {
  for (const auto& t : runs) {
    double worst = 1.0;
    std::string parts;
    for (const auto& r : t.report.runs) {
      worst = std::min(worst, r.fit.correlation);
      parts += fmt::format(" {}={:.5f}", to_string(r.kind), r.fit.correlation);
    }
    v.check(worst >= gates::kMinCorrelation,
            fmt::format("{} correlation{} (>= {})", label(t.report), parts, gates::kMinCorrelation));
    v.check(t.seconds <= time_limit,
            fmt::format("{} wall clock {:.2f} s (<= {} s)", label(t.report), t.seconds, time_limit));
  }
}

void handshake(const std::vector<Timed>& runs, Verdict& v) {
  for (const auto& t : runs) {
    for (const auto& c : t.report.comparisons) {
      double min_corr = 1.0, max_rms = 0.0;
      for (const auto& cc : c.curves) {
        min_corr = std::min(min_corr, cc.curve_correlation);
        max_rms = std::max(max_rms, cc.rms_difference);
      }
      v.check(min_corr >= gates::kMinCurveCorrelation && max_rms <= gates::kMaxRmsDifference,
              fmt::format("{} {}~{} phi curve_correlation min {:.4f} (>= {}), rms max {:.4f} (<= {})",
                          label(t.report), c.a, c.b, min_corr, gates::kMinCurveCorrelation, max_rms,
                          gates::kMaxRmsDifference));
    }
    for (const auto& r : t.report.runs) {
      v.check(r.fit.e2 <= gates::kMaxE2, fmt::format("{} {} e2 {:.5f} (<= {})", label(t.report),
                                                       to_string(r.kind), r.fit.e2, gates::kMaxE2));
    }
  }
}

void shapes(const std::vector<Timed>& bsc, const std::vector<Timed>& msc, Verdict& v) {
  for (const auto& t : bsc) {
    for (const auto& r : t.report.runs) {
      const auto& s = r.shape;
      const std::string who = fmt::format("{} {}", label(t.report), to_string(r.kind));
      v.check(*s.phi_epsilon_asymmetry <= gates::kMaxPhiAsymmetry,
              fmt::format("{} phi_epsilon asymmetry {:.4f} (<= {}; full grid {:.4f})", who,
                          *s.phi_epsilon_asymmetry, gates::kMaxPhiAsymmetry,
                          *s.phi_epsilon_asymmetry_full));
      if (is_bsc_only(r.kind)) {
        v.check(*s.phi_lambda_decreasing_fraction >= gates::kMinMonotoneFraction,
                fmt::format("{} phi_lambda decreasing fraction {:.4f} (>= {})", who,
                            *s.phi_lambda_decreasing_fraction, gates::kMinMonotoneFraction));
      } else {
        v.info(fmt::format("{} phi_lambda decreasing fraction {:.4f} (not gated: the measure is "
                           "symmetric under lambda -> 1 - lambda)",
                           who, *s.phi_lambda_decreasing_fraction));
      }
      v.check(s.theta_increasing_fraction >= gates::kMinMonotoneFraction,
              fmt::format("{} theta increasing fraction {:.4f} (>= {})", who,
                          s.theta_increasing_fraction, gates::kMinMonotoneFraction));
    }
  }
  for (const auto& t : msc) {
    for (const auto& r : t.report.runs) {
      const auto& s = r.shape;
      const std::string who = fmt::format("{} {}", label(t.report), to_string(r.kind));
      v.check(*s.phi_epsilon_argmin >= gates::kPhiEpsilonArgminLo &&
                  *s.phi_epsilon_argmin <= gates::kPhiEpsilonArgminHi,
              fmt::format("{} phi_epsilon argmin {:.4f} (in [{}, {}])", who, *s.phi_epsilon_argmin,
                          gates::kPhiEpsilonArgminLo, gates::kPhiEpsilonArgminHi));
      v.check(s.theta_increasing_fraction >= gates::kMinMonotoneFraction,
              fmt::format("{} theta increasing fraction {:.4f} (>= {})", who,
                          s.theta_increasing_fraction, gates::kMinMonotoneFraction));
    }
  }
}

void chernoff_oracle(Verdict& v) {
  UniformStream u(20260501);
  double worst_value = 0.0, worst_alpha = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const BscParams p{u.next(), u.next()};
    const auto j = bsc_joint(p);
    const std::vector<double> p1(j.cells().begin(), j.cells().end());
    const auto p2 = j.marginal_product();
    const auto golden = chernoff_mi(j);
    double best = std::numeric_limits<double>::infinity(), best_a = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double a = i / 10000.0;
      double s = 0.0;
      for (std::size_t k = 0; k < p1.size(); ++k) {
        if (p1[k] > 0.0 && p2[k] > 0.0) s += std::pow(p1[k], a) * std::pow(p2[k], 1.0 - a);
      }
      const double val = std::log(s);
      if (val < best) {
        best = val;
        best_a = a;
      }
    }
    worst_value = std::max(worst_value, std::abs(golden.value - std::max(0.0, -best)));
    worst_alpha = std::max(worst_alpha, std::abs(*golden.alpha_star - best_a));
  }
  v.check(worst_value <= 1e-6, fmt::format("max |golden - grid| value {:.3g} (<= 1e-6)", worst_value));
  v.check(worst_alpha <= 1e-3, fmt::format("max |golden - grid| alpha {:.3g} (<= 1e-3)", worst_alpha));
}

void measure_properties(Verdict& v) {
  UniformStream u(20260502);
  double min_s = 0.0, min_c = 0.0, excess = -std::numeric_limits<double>::infinity();
  double indep = 0.0;
  const std::size_t trials = 100000;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t rows = 2, cols = 2;
    std::vector<double> cells;
    switch (t % 3) {
      case 0: {
        const auto j = bsc_joint({u.next(), u.next()});
        cells.assign(j.cells().begin(), j.cells().end());
        break;
      }
      case 1: {
        const int m = 2 + static_cast<int>(t / 3 % 5);
        const auto j = msc_joint({m, random_simplex(u, static_cast<std::size_t>(m)), u.next()});
        rows = cols = static_cast<std::size_t>(m);
        cells.assign(j.cells().begin(), j.cells().end());
        break;
      }
      default: {
        rows = 2 + t / 3 % 4;
        cols = 2 + t / 12 % 4;
        cells = random_simplex(u, rows * cols);
        break;
      }
    }
    const JointDistribution j(rows, cols, cells);
    const double s = shannon_mi(j).value, c = chernoff_mi(j).value;
    min_s = std::min(min_s, s);
    min_c = std::min(min_c, c);
    const double bound = std::log(static_cast<double>(std::min(rows, cols)));
    excess = std::max({excess, s - bound, c - bound});

    const std::vector<double> r = random_simplex(u, rows), q = random_simplex(u, cols);
    std::vector<double> prod;
    for (double a : r)
      for (double b : q) prod.push_back(a * b);
    const JointDistribution ij(rows, cols, prod);
    indep = std::max({indep, shannon_mi(ij).value, chernoff_mi(ij).value});
  }
  for (int m = 2; m <= 6; ++m) {
    const auto j = msc_joint({m, random_simplex(u, static_cast<std::size_t>(m)), (m - 1.0) / m});
    indep = std::max({indep, shannon_mi(j).value, chernoff_mi(j).value});
  }
  v.check(min_s >= 0.0 && min_c >= 0.0,
          fmt::format("{} joints: min shannon_mi {:.3g}, min chernoff_mi {:.3g} (>= 0)", trials, min_s,
                      min_c));
  v.check(excess <= 1e-9, fmt::format("max (measure - log m) {:.3g} (<= 1e-9)", excess));
  v.check(indep <= 1e-8, fmt::format("max measure at independence points {:.3g} (<= 1e-8)", indep));
}

void ace_battery(const std::vector<Timed>& all, Verdict& v) {
  std::size_t fits = 0;
  bool traces = true;
  double worst_gap = 0.0;
  auto account = [&](const AceResult& r, const AceDiagnostics& d) {
    ++fits;
    traces = traces && d.trace_non_increasing;
    for (std::size_t i = 1; i < r.e2_trace.size(); ++i) traces = traces && r.e2_trace[i] <= r.e2_trace[i - 1];
    worst_gap = std::max(worst_gap, d.identity_gap);
  };
  for (const auto& t : all)
    for (const auto& r : t.report.runs) account(r.fit, r.diagnostics);

  UniformStream u(20260503);
  const std::size_t n = 50000;
  for (double rho : {0.2, 0.5, 0.8}) {
    const auto a = normals(u, n), b = normals(u, n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = rho * a[i] + std::sqrt(1.0 - rho * rho) * b[i];
    const Dataset d({"x"}, {a}, "y", y);
    const auto r = ace_fit(d);
    account(r, diagnose(r, d));
    v.check(std::abs(r.correlation - rho) <= 0.03,
            fmt::format("gaussian rho={} maximal correlation {:.4f} (within 0.03)", rho, r.correlation));
  }

  const auto x1 = uniforms(u, 20000), x2 = uniforms(u, 20000);
  std::vector<double> y(x1.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = x1[i] + x2[i];
  const Dataset d({"x1", "x2"}, {x1, x2}, "y", y);
  const auto r = ace_fit(d);
  account(r, diagnose(r, d));
  v.check(r.correlation >= 0.995, fmt::format("additive model correlation {:.5f} (>= 0.995)", r.correlation));
  for (const auto& phi : r.phis) {
    const double c = pearson(phi.knots(), phi.values());
    v.check(c * c >= 0.99, fmt::format("additive model {} linear R^2 {:.5f} (>= 0.99)", phi.name(), c * c));
  }

  v.check(traces, fmt::format("e2_trace non-increasing on all {} fits", fits));
  v.check(worst_gap <= gates::kMaxIdentityGap,
          fmt::format("max |correlation^2 + e2 - 1| {:.3g} over {} fits (<= {})", worst_gap, fits,
                      gates::kMaxIdentityGap));
}

void ordering(const std::vector<Timed>& all, Verdict& v) {
  for (const auto& t : all) {
    const auto json = report_json(t.report, acceptance_gates(t.report));
    for (const auto& c : t.report.comparisons) {
      v.check(c.orderings.has_value() && json.find("\"orderings\"") != std::string::npos,
              fmt::format("{} ordering emitted", label(t.report)));
      if (!c.orderings) continue;
      const auto& o = *c.orderings;
      v.info(fmt::format("{} {} < {} on {} of {} samples, {} > on {}; mean difference {:.4f}; "
                         "\"invariably smaller\" {}",
                         label(t.report), c.a, c.b, o.a_less, o.a_less + o.equal + o.a_greater, c.a,
                         o.a_greater, o.mean_difference, o.a_greater == 0 ? "holds" : "does not hold"));
    }
  }
  const double s = shannon_mi(bsc_joint({0.5, 0.1})).value;
  const double c = chernoff_mi(bsc_joint({0.5, 0.1})).value;
  v.info(fmt::format("lambda=0.5 epsilon=0.1: shannon_mi {:.4f} nats, chernoff_mi {:.4f} nats", s, c));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism(Verdict& v) {
  const fs::path base = fs::temp_directory_path() / "chinfo_acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);
  for (const char* sub : {"a", "b"}) {
    const std::string cmd = fmt::format("\"{}\" run-paper --seed 1 --outdir \"{}\" > \"{}\" 2>&1",
                                        CHINFO_CLI_PATH, (base / sub).string(),
                                        (base / (std::string(sub) + ".log")).string());
    const int rc = std::system(cmd.c_str());
    v.info(fmt::format("run-paper --seed 1 into {}: exit status {}", sub, rc));
  }
  std::size_t compared = 0;
  if (fs::exists(base / "a")) {
    for (const auto& e : fs::directory_iterator(base / "a")) {
      const auto name = e.path().filename().string();
      if (name.size() < 12 || name.substr(name.size() - 12) != "_report.json") continue;
      ++compared;
      v.check(slurp(e.path()) == slurp(base / "b" / name), fmt::format("{} byte-identical", name));
    }
  }
  v.check(compared == 3, fmt::format("{} report files compared", compared));
  fs::remove_all(base);
}

}  // namespace

int main() {
  std::vector<Timed> bsc, msc;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto cfg = ExperimentConfig::defaults(ChannelKind::bsc);
    cfg.seed = seed;
    bsc.push_back(timed_run(cfg));
    bsc.push_back(timed_run(cfg.with_paper_variant()));
  }
  {
    Verdict v;
    fit_quality(bsc, 60.0, v);
    emit(1, "BSC reproduction (n=20000, seeds 1-5, both readings)", v);
  }

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto cfg = ExperimentConfig::defaults(ChannelKind::msc);
    cfg.seed = seed;
    msc.push_back(timed_run(cfg));
  }
  {
    Verdict v;
    fit_quality(msc, 300.0, v);
    emit(2, "MSC reproduction (n=60000, m=4, seeds 1-5)", v);
  }

  std::vector<Timed> all = bsc;
  all.insert(all.end(), msc.begin(), msc.end());
  {
    Verdict v;
    handshake(all, v);
    emit(3, "Shannon/Chernoff handshake and residual", v);
  }
  {
    Verdict v;
    shapes(bsc, msc, v);
    emit(4, "curve shapes", v);
  }
  {
    Verdict v;
    chernoff_oracle(v);
    emit(5, "Chernoff golden-section vs 10^4-point grid (1000 BSC joints)", v);
  }
  {
    Verdict v;
    measure_properties(v);
    emit(6, "measure properties (10^5 joints)", v);
  }
  {
    Verdict v;
    ace_battery(all, v);
    emit(7, "ACE correctness battery", v);
  }
  {
    Verdict v;
    ordering(all, v);
    emit(8, "Shannon vs Chernoff ordering report", v);
  }
  {
    Verdict v;
    determinism(v);
    emit(9, "run-paper determinism", v);
  }

  fmt::print("{} of 9 criteria failed\n", failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
