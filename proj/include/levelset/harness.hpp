/*
 * Copyright 2026 The levelset Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
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
#include <vector>

#include "levelset/config.hpp"
#include "levelset/measure.hpp"

namespace levelset {

inline constexpr int kReportSchemaVersion = 1;

struct CellMeasure {
  Window cell;
  MeasureEstimate estimate;
};

struct LevelRow {
  std::int64_t m = 0;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> counts;   // per cell; sums to total
  std::optional<double> discrepancy;  // empty when total == 0 or on error
  std::string strategy;
  std::optional<std::string> error;
  double wall_seconds = 0.0;
};

struct EquidistReport {
  std::vector<CellMeasure> cells;
  double mu_window = 0.0;            // sum of cell estimates
  std::vector<LevelRow> rows;        // sorted by m
  std::optional<double> spearman;    // (m, D_m) over levels with a value
  std::size_t levels_used = 0;
  bool any_error() const;
};

struct RatioRow {
  std::int64_t m = 0;
  std::uint64_t count_a = 0;
  std::uint64_t count_b = 0;
  std::optional<double> ratio;      // empty when count_b == 0
  std::optional<double> deviation;  // |ratio - mu ratio|
  std::optional<std::string> error;
};

struct RatioTable {
  MeasureEstimate mu_a;
  MeasureEstimate mu_b;
  std::optional<double> mu_ratio;
  std::optional<double> mu_ratio_std_error;
  std::vector<RatioRow> rows;
  std::size_t third = 0;  // rows per summary block
  std::optional<double> median_first_third;
  std::optional<double> median_last_third;
  bool any_error() const;
};

struct OmegaRow {
  std::int64_t m = 0;
  std::uint64_t total = 0;
  Int hecke = 0;
  double normalized = 0.0;  // total / hecke
};

struct OmegaTable {
  std::vector<OmegaRow> rows;
  std::optional<double> cv_last_third;
  std::optional<double> spearman_total_hecke;
};

/// 1/2 sum_i |n_i / T - mu_i / mu_W|; empty when T == 0 or mu_W == 0.
std::optional<double> discrepancy(const std::vector<std::uint64_t>& counts, const std::vector<double>& mu);

/// Cell of each point under exact face tests (points on a face go to the lower cell).
std::vector<std::uint64_t> cell_counts(const PolynomialFamily& family, std::int64_t m, const Window& window,
                                       const CellGrid& grid, const std::vector<AmbientPoint>& points);

/// Seed of the measure run for cell `index`; ratio windows use indices past the cells.
std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t index);

EquidistReport run_equidist(const ExperimentConfig& config);
RatioTable run_ratio_test(const ExperimentConfig& config);
OmegaTable run_omega_trend(const ExperimentConfig& config);
/// Omega table from counts already in an equidistribution report.
OmegaTable omega_from_rows(int n, const std::vector<LevelRow>& rows);

struct FullReport {
  ExperimentConfig config;
  EquidistReport equidist;
  std::optional<RatioTable> ratio;
  std::optional<OmegaTable> omega;
  bool any_error() const;
};

/// Runs every experiment the config asks for.
FullReport run_report(const ExperimentConfig& config);

/// Deterministic JSON document (no thread counts or paths).
std::string report_json(const FullReport& report);
std::string levels_csv(const FullReport& report);
std::string cells_csv(const FullReport& report);

/// Writes the JSON to `json_path` and levels.csv / cells.csv beside it, each atomically.
void write_report(const FullReport& report, const std::string& json_path);

}  // namespace levelset
