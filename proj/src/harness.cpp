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

#include "levelset/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "levelset/cache.hpp"
#include "levelset/lattice.hpp"
#include "levelset/rng.hpp"
#include "levelset/stats.hpp"

namespace levelset {

namespace {

using Json = nlohmann::ordered_json;

// Runs body(i) for i in [0, count) on up to `threads` workers; results are
// written by index so the outcome does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::unique_ptr<PointCache> open_cache(const ExperimentConfig& config) {
  if (config.cache_dir.empty()) return nullptr;
  return std::make_unique<PointCache>(config.cache_dir);
}

PointSet level_points(const ExperimentConfig& config, const PointCache* cache, std::int64_t m, const Window& window,
                      unsigned threads) {
  if (cache) {
    if (auto hit = cache->get(config.family, m, window)) return std::move(*hit);
  }
  EnumerationOptions opts = config.enumeration;
  opts.threads = threads;
  PointSet set = enumerate_points(config.family, m, window, opts);
  if (cache) cache->put(set);
  return set;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json estimate_json(const MeasureEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["std_error"] = e.no_hits ? Json(nullptr) : finite_or_null(e.std_error);
  j["samples"] = e.samples;
  j["hits"] = e.hits;
  j["seed"] = e.seed;
  return j;
}

Json window_json(const Window& w) {
  Json out = Json::array();
  for (const auto& [lo, hi] : w.bounds()) out.push_back(Json::array({lo, hi}));
  return out;
}

std::string csv_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

bool EquidistReport::any_error() const {
  return std::any_of(rows.begin(), rows.end(), [](const LevelRow& r) { return r.error.has_value(); });
}

bool RatioTable::any_error() const {
  return std::any_of(rows.begin(), rows.end(), [](const RatioRow& r) { return r.error.has_value(); });
}

bool FullReport::any_error() const { return equidist.any_error() || (ratio && ratio->any_error()); }

std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t index) { return counter_hash(seed, 0x63656c6cULL, index); }

std::optional<double> discrepancy(const std::vector<std::uint64_t>& counts, const std::vector<double>& mu) {
  if (counts.size() != mu.size()) throw DimensionError("discrepancy needs one measure per cell");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  double mu_w = 0;
  for (auto v : mu) mu_w += v;
  if (total == 0 || !(mu_w > 0)) return std::nullopt;
  if (counts.size() == 1) return 0.0;
  double sum = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    sum += std::fabs(static_cast<double>(counts[i]) / static_cast<double>(total) - mu[i] / mu_w);
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

std::vector<std::uint64_t> cell_counts(const PolynomialFamily& family, std::int64_t m, const Window& window,
                                       const CellGrid& grid, const std::vector<AmbientPoint>& points) {
  const unsigned d = family.degree();
  // thresholds[k][j]: x > t  <=>  m^(-1/d) x > face j+1 (interior faces only).
  std::vector<std::vector<std::int64_t>> thresholds(grid.axes.size());
  for (std::size_t k = 0; k < grid.axes.size(); ++k)
    for (std::size_t j = 1; j < grid.splits[k]; ++j) thresholds[k].push_back(scaled_floor(m, d, grid.face(window, k, j)));
  std::vector<std::uint64_t> counts(grid.cell_count(), 0);
  for (const auto& x : points) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < grid.axes.size(); ++k) {
      const auto& t = thresholds[k];
      const auto pos = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), x[grid.axes[k]]) - t.begin());
      index = index * grid.splits[k] + pos;
    }
    ++counts[index];
  }
  return counts;
}

EquidistReport run_equidist(const ExperimentConfig& config) {
  config.validate();
  EquidistReport report;
  const auto windows = config.grid.cells(config.window);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    MeasureOptions opts = config.measure;
    opts.seed = cell_seed(config.measure.seed, i);
    report.cells.push_back({windows[i], estimate_measure(config.family, windows[i], opts)});
    report.mu_window += report.cells.back().estimate.value;
  }
  std::vector<double> mu;
  for (const auto& c : report.cells) mu.push_back(c.estimate.value);

  const auto cache = open_cache(config);
  report.rows.resize(config.levels.size());
  const unsigned threads = std::max(1u, config.enumeration.threads);
  // Levels run in parallel; with fewer levels than threads the leftover goes to each enumeration.
  const unsigned inner = config.levels.size() >= threads ? 1u : threads;
  parallel_for(config.levels.size(), threads, [&](std::size_t i) {
    LevelRow& row = report.rows[i];
    row.m = config.levels[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      const PointSet set = level_points(config, cache.get(), row.m, config.window, inner);
      row.strategy = set.strategy;
      row.total = set.size();
      row.counts = cell_counts(config.family, row.m, config.window, config.grid, set.points);
      row.discrepancy = discrepancy(row.counts, mu);
    } catch (const Error& e) {
      row.error = e.what();
      row.counts.clear();
      row.total = 0;
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  std::vector<double> ms, ds;
  for (const auto& row : report.rows)
    if (row.discrepancy) {
      ms.push_back(static_cast<double>(row.m));
      ds.push_back(*row.discrepancy);
    }
  report.levels_used = ms.size();
  report.spearman = spearman(ms, ds);
  return report;
}

RatioTable run_ratio_test(const ExperimentConfig& config) {
  config.validate();
  if (!config.ratio_window_a) throw ArgumentError("ratio test needs ratio_window_a and ratio_window_b");
  const Window& wa = *config.ratio_window_a;
  const Window& wb = *config.ratio_window_b;
  RatioTable table;
  const std::size_t base = config.grid.cell_count();
  MeasureOptions opts = config.measure;
  opts.seed = cell_seed(config.measure.seed, base);
  table.mu_a = estimate_measure(config.family, wa, opts);
  opts.seed = cell_seed(config.measure.seed, base + 1);
  table.mu_b = estimate_measure(config.family, wb, opts);
  if (!table.mu_a.no_hits && !table.mu_b.no_hits) {
    const double r = table.mu_a.value / table.mu_b.value;
    table.mu_ratio = r;
    table.mu_ratio_std_error = r * std::hypot(table.mu_a.std_error / table.mu_a.value, table.mu_b.std_error / table.mu_b.value);
  }

  const auto cache = open_cache(config);
  table.rows.resize(config.levels.size());
  const unsigned threads = std::max(1u, config.enumeration.threads);
  const unsigned inner = config.levels.size() >= threads ? 1u : threads;
  parallel_for(config.levels.size(), threads, [&](std::size_t i) {
    RatioRow& row = table.rows[i];
    row.m = config.levels[i];
    try {
      row.count_a = level_points(config, cache.get(), row.m, wa, inner).size();
      row.count_b = level_points(config, cache.get(), row.m, wb, inner).size();
    } catch (const Error& e) {
      row.error = e.what();
      return;
    }
    if (row.count_b == 0) return;
    row.ratio = static_cast<double>(row.count_a) / static_cast<double>(row.count_b);
    if (table.mu_ratio) row.deviation = std::fabs(*row.ratio - *table.mu_ratio);
  });

  std::vector<double> dev;
  for (const auto& row : table.rows)
    if (row.deviation) dev.push_back(*row.deviation);
  if (!dev.empty()) {
    table.third = std::max<std::size_t>(1, dev.size() / 3);
    table.median_first_third = median({dev.begin(), dev.begin() + static_cast<std::ptrdiff_t>(table.third)});
    table.median_last_third = median({dev.end() - static_cast<std::ptrdiff_t>(table.third), dev.end()});
  }
  return table;
}

OmegaTable omega_from_rows(int n, const std::vector<LevelRow>& rows) {
  OmegaTable table;
  for (const auto& row : rows) {
    if (row.error) continue;
    OmegaRow r{row.m, row.total, hecke_degree(n, row.m)};
    r.normalized = static_cast<double>(row.total) / static_cast<double>(r.hecke);
    table.rows.push_back(r);
  }
  if (table.rows.empty()) return table;
  const std::size_t third = std::max<std::size_t>(1, table.rows.size() / 3);
  std::vector<double> tail;
  for (std::size_t i = table.rows.size() - third; i < table.rows.size(); ++i) tail.push_back(table.rows[i].normalized);
  table.cv_last_third = coefficient_of_variation(tail);
  std::vector<double> totals, heckes;
  for (const auto& r : table.rows) {
    totals.push_back(static_cast<double>(r.total));
    heckes.push_back(static_cast<double>(r.hecke));
  }
  table.spearman_total_hecke = spearman(totals, heckes);
  return table;
}

OmegaTable run_omega_trend(const ExperimentConfig& config) {
  config.validate();
  if (config.family.kind() != FamilyKind::Determinant)
    throw UnsupportedFamilyError("the omega trend needs the determinant family");
  const auto cache = open_cache(config);
  std::vector<LevelRow> rows(config.levels.size());
  const unsigned threads = std::max(1u, config.enumeration.threads);
  const unsigned inner = config.levels.size() >= threads ? 1u : threads;
  parallel_for(config.levels.size(), threads, [&](std::size_t i) {
    rows[i].m = config.levels[i];
    try {
      rows[i].total = level_points(config, cache.get(), rows[i].m, config.window, inner).size();
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  });
  return omega_from_rows(config.family.n(), rows);
}

FullReport run_report(const ExperimentConfig& config) {
  FullReport report{config, run_equidist(config)};
  if (config.ratio_window_a) report.ratio = run_ratio_test(config);
  if (config.omega_trend) report.omega = omega_from_rows(config.family.n(), report.equidist.rows);
  return report;
}

std::string report_json(const FullReport& report) {
  const ExperimentConfig& cfg = report.config;
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["family"] = cfg.family.key();
  j["dimension"] = cfg.family.dimension();
  j["degree"] = cfg.family.degree();
  if (cfg.family.outside_hypotheses())
    j["warnings"] = Json::array({"quadratic form lies outside r + s >= 4, r >= 2, s >= 1"});
  j["level_filter"] = cfg.level_filter == LevelFilter::Fundamental ? "fundamental" : "none";
  j["window"] = window_json(cfg.window);
  j["window_hash"] = cfg.window.hash_hex();
  j["point_set_version"] = kPointSetVersion;
  j["grid"] = {{"axes", cfg.grid.axes}, {"splits", cfg.grid.splits}};
  j["measure"] = {{"epsilon", cfg.measure.epsilon}, {"samples", cfg.measure.samples}, {"seed", cfg.measure.seed}};

  const auto& eq = report.equidist;
  Json cells = Json::array();
  for (std::size_t i = 0; i < eq.cells.size(); ++i) {
    Json c;
    c["index"] = i;
    c["bounds"] = window_json(eq.cells[i].cell);
    c["mu"] = estimate_json(eq.cells[i].estimate);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  j["mu_window"] = eq.mu_window;

  Json levels = Json::array();
  for (const auto& row : eq.rows) {
    Json r;
    r["m"] = row.m;
    if (row.error) {
      r["status"] = "error";
      r["error"] = *row.error;
    } else {
      r["status"] = "ok";
      r["total"] = row.total;
      r["counts"] = row.counts;
      r["discrepancy"] = optional_number(row.discrepancy);
    }
    if (cfg.timings) r["wall_seconds"] = row.wall_seconds;
    levels.push_back(std::move(r));
  }
  j["levels"] = std::move(levels);
  j["equidist"] = {{"levels_used", eq.levels_used}, {"spearman_m_discrepancy", optional_number(eq.spearman)}};

  if (report.ratio) {
    const auto& t = *report.ratio;
    Json r;
    r["window_a"] = window_json(*cfg.ratio_window_a);
    r["window_b"] = window_json(*cfg.ratio_window_b);
    r["mu_a"] = estimate_json(t.mu_a);
    r["mu_b"] = estimate_json(t.mu_b);
    r["mu_ratio"] = optional_number(t.mu_ratio);
    r["mu_ratio_std_error"] = optional_number(t.mu_ratio_std_error);
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json x;
      x["m"] = row.m;
      if (row.error) {
        x["status"] = "error";
        x["error"] = *row.error;
      } else {
        x["status"] = row.count_b == 0 ? "flagged" : "ok";
        x["count_a"] = row.count_a;
        x["count_b"] = row.count_b;
        x["ratio"] = optional_number(row.ratio);
        x["deviation"] = optional_number(row.deviation);
      }
      rows.push_back(std::move(x));
    }
    r["rows"] = std::move(rows);
    r["summary"] = {{"rows_per_third", t.third},
                    {"median_deviation_first_third", optional_number(t.median_first_third)},
                    {"median_deviation_last_third", optional_number(t.median_last_third)}};
    j["ratio_test"] = std::move(r);
  } else {
    j["ratio_test"] = nullptr;
  }

  if (report.omega) {
    Json rows = Json::array();
    for (const auto& row : report.omega->rows)
      rows.push_back({{"m", row.m}, {"total", row.total}, {"hecke_degree", to_string(row.hecke)}, {"normalized", row.normalized}});
    j["omega_trend"] = {{"rows", std::move(rows)},
                        {"cv_last_third", optional_number(report.omega->cv_last_third)},
                        {"spearman_total_hecke", optional_number(report.omega->spearman_total_hecke)}};
  } else {
    j["omega_trend"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string levels_csv(const FullReport& report) {
  std::ostringstream out;
  out << "m,T_m,D_m\n";
  for (const auto& row : report.equidist.rows) {
    out << row.m << ',';
    if (!row.error) out << row.total;
    out << ',';
    if (row.discrepancy) out << csv_double(*row.discrepancy);
    out << '\n';
  }
  return out.str();
}

std::string cells_csv(const FullReport& report) {
  std::ostringstream out;
  out << "m,cell,n_i,mu_i,mu_stderr\n";
  const auto& eq = report.equidist;
  for (const auto& row : eq.rows) {
    if (row.error) continue;
    for (std::size_t i = 0; i < row.counts.size(); ++i) {
      const auto& e = eq.cells[i].estimate;
      out << row.m << ',' << i << ',' << row.counts[i] << ',' << csv_double(e.value) << ','
          << (e.no_hits ? std::string() : csv_double(e.std_error)) << '\n';
    }
  }
  return out.str();
}

void write_report(const FullReport& report, const std::string& json_path) {
  const std::filesystem::path path(json_path);
  const auto dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  write_file_atomic(path, report_json(report));
  write_file_atomic(dir / "levels.csv", levels_csv(report));
  write_file_atomic(dir / "cells.csv", cells_csv(report));
}

}  // namespace levelset
