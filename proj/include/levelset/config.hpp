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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "levelset/enumeration.hpp"
#include "levelset/measure.hpp"
#include "levelset/varieties.hpp"

namespace levelset {

enum class LevelFilter { None, Fundamental };

/// Splits `splits[k]` ways along `axes[k]`; every other axis stays whole.
struct CellGrid {
  std::vector<std::size_t> axes;
  std::vector<std::size_t> splits;

  std::size_t cell_count() const;
  /// Cells in row-major order over the split axes (last axis fastest).
  std::vector<Window> cells(const Window& window) const;
  /// Boundary j (0..splits[k]) along split axis k; shared faces come from this one formula.
  double face(const Window& window, std::size_t k, std::size_t j) const;
  /// Per-axis split index of cell `index`.
  std::vector<std::size_t> cell_coordinates(std::size_t index) const;
};

struct ExperimentConfig {
  PolynomialFamily family = PolynomialFamily::determinant(2);
  std::vector<std::int64_t> levels;  // strictly increasing, after filtering
  LevelFilter level_filter = LevelFilter::None;
  Window window;
  CellGrid grid;
  std::optional<Window> ratio_window_a;
  std::optional<Window> ratio_window_b;
  MeasureOptions measure;
  EnumerationOptions enumeration;
  std::string cache_dir;  // empty: no cache
  std::string out;        // JSON report path; side files go next to it
  bool omega_trend = false;
  bool timings = false;

  /// Throws ArgumentError on inconsistent settings.
  void validate() const;
};

/// Parses the flat "key = value" format. `base_dir` resolves relative
/// window_file and qcoeffs paths. Unknown keys are errors.
ExperimentConfig parse_config(std::istream& in, const std::string& base_dir = ".");
ExperimentConfig read_config(const std::string& path);

/// "lo:hi,lo:hi,..."
Window parse_window_spec(const std::string& text);
/// "a,b,c" or "start:stop:step" (inclusive stop).
std::vector<std::int64_t> parse_level_list(const std::string& text);
std::vector<std::int64_t> parse_level_range(const std::string& text);
/// Upper-triangle coefficients q_ij (i <= j), separated by commas or whitespace.
std::vector<std::int64_t> parse_coefficients(const std::string& text);

/// Diagonal form x_1^2 + ... + x_r^2 - x_{r+1}^2 - ... - x_{r+s}^2.
std::vector<std::int64_t> diagonal_form(int r, int s);

}  // namespace levelset
