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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levelset/harness.hpp"
#include "levelset/lattice.hpp"
#include "levelset/orbits.hpp"

using namespace levelset;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

const std::string kBase =
    "family = det\n"
    "n = 2\n"
    "level_range = 20:200:30\n"
    "window_radius = 1.5\n"
    "grid_axes = 0,3\n"
    "grid_splits = 2,3\n"
    "samples = 20000\n"
    "seed = 7\n";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("levelset-harness-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse(kBase + "# trailing comment\nomega_trend = true\n");
  CHECK(cfg.family == PolynomialFamily::determinant(2));
  CHECK(cfg.levels == std::vector<std::int64_t>{20, 50, 80, 110, 140, 170, 200});
  CHECK(cfg.window == Window::cube(4, 1.5));
  CHECK(cfg.grid.cell_count() == 6);
  CHECK(cfg.measure.samples == 20000);
  CHECK(cfg.measure.seed == 7);
  CHECK(cfg.omega_trend);

  CHECK(parse("family = det\nn = 2\nlevels = 9, 3, 5\nwindow = -1:1,-1:1,-1:1,-1:1\n").levels ==
        std::vector<std::int64_t>{3, 5, 9});
  const auto q = parse("family = quad\nsignature = 2,2\nlevel_range = 1:100\nlevel_filter = fundamental\nwindow_radius = 2\n");
  std::vector<std::int64_t> expected;
  for (std::int64_t m = 1; m <= 100; ++m)
    if (is_fundamental_discriminant(m)) expected.push_back(m);
  CHECK(q.levels == expected);
  CHECK(q.family == PolynomialFamily::quadratic(2, 2, diagonal_form(2, 2)));
  CHECK(parse("family = quad\nsignature = 2,2\nqcoeffs = 1,1,0,0,1,0,0,-1,0,-1\nlevels = 3\nwindow_radius = 1\n")
            .family.quad_coeff(0, 1) == 1);

  CHECK_THROWS_AS(parse(kBase + "colour = blue\n"), ArgumentError);
  CHECK_THROWS_AS(parse(kBase + "seed = 8\n"), ArgumentError);
  CHECK_THROWS_AS(parse("family = det\nn = 2\nlevels = 3,3\nwindow_radius = 1\n"), ArgumentError);
  CHECK_THROWS_AS(parse("family = det\nn = 2\nlevels = 3\n"), ArgumentError);
  CHECK_THROWS_AS(parse("family = det\nn = 2\nlevels = 3\nwindow_radius = 1\ngrid_axes = 4\ngrid_splits = 2\n"),
                  ArgumentError);
  CHECK_THROWS_AS(parse("family = pff\nn = 2\nlevels = 3\nwindow_radius = 1\nomega_trend = true\n"),
                  UnsupportedFamilyError);
  CHECK_THROWS_AS(parse("family = det\nn = 2\nlevels = 3\nwindow = -1:1,-1:1\n"), DimensionError);
  CHECK_THROWS_AS(parse("family = det\nn = 2\nlevels = 3\nwindow_radius = 1\nsamples = 10\n"), ArgumentError);
}

TEST_CASE("grid cells partition the window") {
  const auto cfg = parse(kBase);
  const auto cells = cfg.grid.cells(cfg.window);
  REQUIRE(cells.size() == 6);
  double volume = 0;
  for (const auto& c : cells) {
    volume += c.volume();
    CHECK(c.lo(1) == cfg.window.lo(1));
    CHECK(c.hi(2) == cfg.window.hi(2));
  }
  CHECK(volume == doctest::Approx(cfg.window.volume()));
  // Neighbours share faces exactly.
  CHECK(cells[0].hi(3) == cells[1].lo(3));
  CHECK(cells[0].hi(0) == cells[3].lo(0));
  CHECK(cells[0].lo(0) == cfg.window.lo(0));
  CHECK(cells[5].hi(3) == cfg.window.hi(3));
}

TEST_CASE("cell counts sum to the window count and respect the cells") {
  const auto cfg = parse(kBase);
  const auto cells = cfg.grid.cells(cfg.window);
  for (std::int64_t m : {1, 4, 36, 97, 144}) {
    const auto set = enumerate_points(cfg.family, m, cfg.window);
    const auto counts = cell_counts(cfg.family, m, cfg.window, cfg.grid, set.points);
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    CHECK(total == set.size());
    // Closed cells: each cell's own count is at least the points assigned to it.
    for (std::size_t i = 0; i < cells.size(); ++i) CHECK(count_points(cfg.family, m, cells[i]) >= counts[i]);
    // One cell per point: recompute through exact membership, lowest index wins.
    std::vector<std::uint64_t> again(cells.size(), 0);
    for (const auto& x : set.points) {
      std::size_t best = cells.size();
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!projection_in_window(cfg.family, m, cells[i], x)) continue;
        // Faces go to the lower cell on each axis; among containing cells that is the smallest index.
        best = std::min(best, i);
      }
      REQUIRE(best < cells.size());
      ++again[best];
    }
    CHECK(again == counts);
  }
}

TEST_CASE("discrepancy") {
  CHECK(*discrepancy({5}, {1.3}) == 0.0);
  CHECK(*discrepancy({1, 1}, {1.0, 1.0}) == 0.0);
  CHECK(*discrepancy({2, 0}, {1.0, 1.0}) == doctest::Approx(0.5));
  CHECK(*discrepancy({0, 4}, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK_FALSE(discrepancy({0, 0}, {1.0, 1.0}).has_value());
  CHECK_THROWS_AS(discrepancy({1}, {1.0, 2.0}), DimensionError);
}

TEST_CASE("equidistribution run") {
  const auto cfg = parse(kBase);
  const auto report = run_equidist(cfg);
  REQUIRE(report.rows.size() == cfg.levels.size());
  CHECK_FALSE(report.any_error());
  for (const auto& row : report.rows) {
    std::uint64_t sum = 0;
    for (auto c : row.counts) sum += c;
    CHECK(sum == row.total);
    CHECK(row.total == count_points(cfg.family, row.m, cfg.window));
    REQUIRE(row.discrepancy.has_value());
    CHECK(*row.discrepancy >= 0.0);
    CHECK(*row.discrepancy <= 1.0);
  }
  CHECK(report.levels_used == cfg.levels.size());
  CHECK(report.spearman.has_value());

  const auto single = run_equidist(parse("family = det\nn = 2\nlevel_range = 1:40:3\nwindow_radius = 1.5\nsamples = 10000\n"));
  for (const auto& row : single.rows) CHECK(*row.discrepancy == 0.0);
}

TEST_CASE("empty levels are recorded and errors do not leave gaps") {
  // m^(1/2) * 0.4 < 1 keeps only the origin for small m, which is never on a positive level.
  auto cfg = parse("family = det\nn = 2\nlevels = 1,2,3,400\nwindow = 0.1:0.4,0.1:0.4,0.1:0.4,0.1:0.4\nsamples = 10000\n");
  auto report = run_equidist(cfg);
  CHECK_FALSE(report.rows[0].discrepancy.has_value());
  CHECK(report.rows[0].total == 0);
  CHECK_FALSE(report.rows[0].error.has_value());

  cfg = parse(kBase + "enum_budget = 10000\n");
  report = run_equidist(cfg);
  REQUIRE(report.rows.size() == cfg.levels.size());
  CHECK(report.any_error());
  CHECK(report.rows.front().error.has_value() == false);
  CHECK(report.rows.back().error.has_value());
  FullReport full{cfg, report};
  const auto json = nlohmann::json::parse(report_json(full));
  CHECK(json["levels"].back()["status"] == "error");
  CHECK(json["levels"].back()["error"].get<std::string>().find("budget") != std::string::npos);
}

TEST_CASE("ratio test") {
  auto cfg = parse(kBase + "ratio_window_a = -1:1,-1:1,-1:1,-1:1\nratio_window_b = -1:1,-1:1,-1:1,-1:1\n");
  auto table = run_ratio_test(cfg);
  for (const auto& row : table.rows) CHECK(*row.ratio == 1.0);
  CHECK(std::fabs(*table.mu_ratio - 1.0) < 3 * *table.mu_ratio_std_error);

  cfg = parse(kBase + "ratio_window_a = -0.5:1,-1:1,-1:0.5,-1:1\nratio_window_b = -1:1,-1:1,-1:1,-1:1\n");
  table = run_ratio_test(cfg);
  for (const auto& row : table.rows) CHECK(*row.ratio <= 1.0);
  CHECK(table.third == cfg.levels.size() / 3);
  CHECK(table.median_first_third.has_value());
  CHECK(table.median_last_third.has_value());

  cfg = parse(kBase + "ratio_window_a = -1:1,-1:1,-1:1,-1:1\nratio_window_b = 0.1:0.3,0.1:0.3,0.1:0.3,0.1:0.3\n");
  table = run_ratio_test(cfg);
  CHECK(table.rows[0].count_b == 0);
  CHECK_FALSE(table.rows[0].ratio.has_value());
}

TEST_CASE("omega trend") {
  const auto cfg = parse(kBase);
  const auto table = run_omega_trend(cfg);
  REQUIRE(table.rows.size() == cfg.levels.size());
  for (const auto& row : table.rows) {
    CHECK(row.hecke == hecke_degree(2, row.m));
    CHECK(row.total == count_points(cfg.family, row.m, cfg.window));
  }
  CHECK(table.cv_last_third.has_value());
  CHECK(table.spearman_total_hecke.has_value());
  const auto one = run_omega_trend(parse("family = det\nn = 2\nlevels = 12\nwindow_radius = 1\n"));
  REQUIRE(one.rows.size() == 1);
  CHECK_FALSE(one.cv_last_third.has_value());
  CHECK_THROWS_AS(run_omega_trend(parse("family = pff\nn = 2\nlevels = 3\nwindow_radius = 1\n")), UnsupportedFamilyError);
}

TEST_CASE("reports are deterministic") {
  const std::string text = kBase + "ratio_window_a = 0:1,-1:1,-1:1,-1:1\nratio_window_b = -1:0,-1:1,-1:1,-1:1\nomega_trend = true\n";
  const auto a = report_json(run_report(parse(text)));
  CHECK(a == report_json(run_report(parse(text + "threads = 4\n"))));
  // Level order in the file does not matter.
  const std::string listed = "family = det\nn = 2\nwindow_radius = 1.5\nsamples = 20000\nseed = 7\n";
  CHECK(report_json(run_report(parse(listed + "levels = 80,20,50\n"))) ==
        report_json(run_report(parse(listed + "levels = 20,50,80\n"))));
  const auto json = nlohmann::json::parse(a);
  CHECK(json["schema_version"] == kReportSchemaVersion);
  CHECK(json.find("threads") == json.end());
  CHECK_FALSE(json["ratio_test"].is_null());
  CHECK_FALSE(json["omega_trend"].is_null());
}

TEST_CASE("cold and warm cache give the same report") {
  TempDir dir("cache");
  const std::string text = kBase + "cache_dir = " + (dir.path / "points").string() + "\n";
  const auto cold = report_json(run_report(parse(text)));
  CHECK(fs::exists(dir.path / "points"));
  const auto warm = report_json(run_report(parse(text)));
  CHECK(cold == warm);
  CHECK(cold == report_json(run_report(parse(kBase))));
}

TEST_CASE("report files") {
  TempDir dir("files");
  const auto report = run_report(parse(kBase));
  write_report(report, (dir.path / "out" / "report.json").string());
  CHECK(fs::exists(dir.path / "out" / "report.json"));
  std::ifstream levels(dir.path / "out" / "levels.csv");
  std::string header;
  std::getline(levels, header);
  CHECK(header == "m,T_m,D_m");
  std::size_t rows = 0;
  for (std::string line; std::getline(levels, line);) ++rows;
  CHECK(rows == report.equidist.rows.size());
  std::ifstream cells(dir.path / "out" / "cells.csv");
  std::getline(cells, header);
  CHECK(header == "m,cell,n_i,mu_i,mu_stderr");
  rows = 0;
  for (std::string line; std::getline(cells, line);) ++rows;
  CHECK(rows == report.equidist.rows.size() * 6);
}
