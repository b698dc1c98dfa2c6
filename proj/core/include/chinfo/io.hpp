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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "chinfo/ace.hpp"
#include "chinfo/experiments.hpp"
#include "chinfo/measures.hpp"

namespace chinfo {

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double v);

/// Header `lambda[,lambda2,...],epsilon,y_<measure>...`, one row per sample.
/// All datasets must share the same predictor columns.
void write_dataset_csv(std::ostream& out, std::span<const Dataset> datasets);

/// Numeric CSV with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  /// Throws InvalidArgument for unknown names.
  std::size_t column_index(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const {
    return columns[column_index(name)];
  }
};

CsvTable read_csv_table(std::istream& in);

/// Rows (curve_name, knot, value) sorted by curve name, then knot.
void write_curves_csv(std::ostream& out, const AceResult& result);
/// Rebuilds theta and phi curves; scalar fit statistics are left at defaults.
AceResult read_curves_csv(std::istream& in);

std::string ace_summary_json(const AceResult& result);
std::string comparison_json(const ComparisonReport& report);
std::string measure_json(MeasureKind kind, const MeasureValue& value);

/// Deterministic: wall-clock time is deliberately left out (see timing_json).
std::string report_json(const ExperimentReport& report, std::span<const GateResult> gates);
std::string timing_json(const ExperimentReport& report);

}  // namespace chinfo
