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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "levelset/varieties.hpp"

namespace levelset {

/// Closed axis-aligned box in unit-level coordinates.
class Window {
 public:
  Window() = default;
  /// Throws ArgumentError unless every pair is finite with lo < hi.
  explicit Window(std::vector<std::pair<double, double>> bounds);

  static Window cube(std::size_t dimension, double radius);

  std::size_t dimension() const { return bounds_.size(); }
  const std::vector<std::pair<double, double>>& bounds() const { return bounds_; }
  double lo(std::size_t i) const { return bounds_[i].first; }
  double hi(std::size_t i) const { return bounds_[i].second; }

  bool contains(std::span<const double> point) const;
  double volume() const;

  /// Exact, locale-free text of the bounds (hex floats); input to hash().
  std::string canonical_text() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;

  /// Reads N lines of "lo hi".
  static Window parse(std::istream& in);
  static Window read_file(const std::string& path);
  /// Writes N lines of "lo hi" with round-trip precision.
  void write(std::ostream& out) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  std::vector<std::pair<double, double>> bounds_;
};

/// Integer coordinate ranges of the scaled box m^(1/d) * window.
struct IntegerBox {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;

  bool empty() const;
  /// Number of integer points, as a floating count (may exceed 2^64).
  long double volume() const;
  long double volume_without(std::size_t axis) const;
};

/// Largest integer k with k <= m^(1/d) * q, decided exactly.
std::int64_t scaled_floor(std::int64_t m, unsigned d, double q);
/// Smallest integer k with k >= m^(1/d) * q, decided exactly.
std::int64_t scaled_ceil(std::int64_t m, unsigned d, double q);

IntegerBox scaled_integer_box(const PolynomialFamily& family, std::int64_t m, const Window& window);

/// Exact closed-box membership of project(x, m) in the window.
bool projection_in_window(const PolynomialFamily& family, std::int64_t m, const Window& window,
                          std::span<const std::int64_t> x);

inline constexpr const char* kPointSetVersion = "v1";

struct EnumerationOptions {
  long double budget = 1e10;        // candidate tuples for pruned search
  long double brute_budget = 1e8;   // integer box volume for brute force
  unsigned threads = 1;
};

/// The integer points with f(x) = m whose projection lies in the window.
struct PointSet {
  PolynomialFamily family;
  std::int64_t m = 0;
  Window window;
  std::vector<AmbientPoint> points;  // strictly increasing, lexicographic
  std::string version = kPointSetVersion;
  std::string strategy;              // which search produced the points
  bool fallback = false;             // pruned search unavailable; brute force used

  std::size_t size() const { return points.size(); }
  /// Equality of the mathematical content (family, level, window, points, version).
  bool same_content(const PointSet& other) const;
};

/// Family-specific pruned search.
PointSet enumerate_points(const PolynomialFamily& family, std::int64_t m, const Window& window,
                          const EnumerationOptions& options = {});

/// Exhaustive scan of the scaled integer box.
PointSet enumerate_bruteforce(const PolynomialFamily& family, std::int64_t m, const Window& window,
                              const EnumerationOptions& options = {});

std::uint64_t count_points(const PolynomialFamily& family, std::int64_t m, const Window& window,
                           const EnumerationOptions& options = {});

}  // namespace levelset
