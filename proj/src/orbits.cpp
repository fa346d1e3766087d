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

#include "levelset/orbits.hpp"

#include <map>

namespace levelset {

namespace {

// Partitions of k into at most `parts` parts.
std::uint64_t partitions_at_most(unsigned k, int parts) {
  // ways[j] = partitions of j using part sizes 1..parts (conjugate count).
  std::vector<std::uint64_t> ways(k + 1, 0);
  ways[0] = 1;
  for (int size = 1; size <= parts; ++size)
    for (unsigned j = static_cast<unsigned>(size); j <= k; ++j) ways[j] += ways[j - size];
  return ways[k];
}

AmbientPoint primitive_direction(std::span<const std::int64_t> x) {
  Int g = 0;
  for (auto v : x) g = gcd(g, v);
  AmbientPoint out(x.begin(), x.end());
  if (g > 1)
    for (auto& v : out) v = static_cast<std::int64_t>(v / g);
  return out;
}

}  // namespace

SmithChain orbit_class(const PolynomialFamily& family, std::span<const std::int64_t> x) {
  if (family.kind() != FamilyKind::Determinant) {
    throw UnsupportedFamilyError("orbit classes are only defined for the determinant family, not " + family.key());
  }
  const Int value = eval(family, x);
  if (value <= 0) throw ArgumentError("orbit_class needs a point of positive level, got " + to_string(value));
  const auto n = static_cast<std::size_t>(family.n());
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = x[i];
  return snf(m);
}

OrbitHistogram orbit_histogram(const PointSet& points) {
  if (points.family.kind() != FamilyKind::Determinant) {
    throw UnsupportedFamilyError("orbit histograms are only defined for the determinant family");
  }
  std::map<SmithChain, std::uint64_t> counts;
  for (const auto& x : points.points) ++counts[orbit_class(points.family, x)];
  OrbitHistogram hist{points.family, points.m, points.window};
  hist.rows.assign(counts.begin(), counts.end());
  hist.total = points.size();
  hist.possible_chains = divisor_chain_count(points.family.n(), points.m);
  return hist;
}

OrbitHistogram orbit_histogram(const PolynomialFamily& family, std::int64_t m, const Window& window,
                               const EnumerationOptions& options) {
  if (family.kind() != FamilyKind::Determinant) {
    throw UnsupportedFamilyError("orbit histograms are only defined for the determinant family");
  }
  return orbit_histogram(enumerate_points(family, m, window, options));
}

std::uint64_t divisor_chain_count(int n, std::int64_t m) {
  if (n < 1 || m < 1) throw ArgumentError("divisor_chain_count needs n >= 1 and m >= 1");
  std::uint64_t total = 1;
  for (const auto& [p, k] : factorize(m)) total *= partitions_at_most(k, n);
  return total;
}

bool is_fundamental_discriminant(std::int64_t m) {
  if (m < 1) throw ArgumentError("is_fundamental_discriminant needs m >= 1");
  if (m % 4 == 1) return is_squarefree(m);
  if (m % 4 == 0) {
    const std::int64_t k = m / 4;
    return (k % 4 == 2 || k % 4 == 3) && is_squarefree(k);
  }
  return false;
}

std::vector<std::int64_t> fundamental_discriminants_up_to(std::int64_t max) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; m <= max; ++m)
    if (is_fundamental_discriminant(m)) out.push_back(m);
  return out;
}

std::optional<std::int64_t> radial_scaling_witness(const PolynomialFamily& family, std::int64_t m0, std::int64_t m) {
  if (m0 < 1 || m < 1) throw ArgumentError("radial_scaling_witness needs m0, m >= 1");
  if (m % m0 != 0) return std::nullopt;
  const Int k = exact_root(m / m0, family.degree());
  if (k < 2) return std::nullopt;
  return static_cast<std::int64_t>(k);
}

bool same_projection(const PolynomialFamily& family, std::span<const std::int64_t> x, std::int64_t m0,
                     std::span<const std::int64_t> y, std::int64_t m) {
  if (x.size() != y.size()) throw DimensionError("points differ in length");
  const unsigned d = family.degree();
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((x[i] > 0) != (y[i] > 0) || (x[i] < 0) != (y[i] < 0)) return false;
    if (x[i] == 0) continue;
    any = true;
    // y_i = (m/m0)^(1/d) x_i  <=>  |y_i|^d m0 == |x_i|^d m (same signs)
    const Int lhs = checked_mul(checked_pow(abs_value(y[i]), d), m0);
    const Int rhs = checked_mul(checked_pow(abs_value(x[i]), d), m);
    if (lhs != rhs) return false;
  }
  return any || m0 == m;
}

std::vector<std::pair<std::size_t, std::size_t>> shared_projections(const PointSet& a, const PointSet& b) {
  if (!(a.family == b.family)) throw ArgumentError("point sets come from different families");
  std::map<AmbientPoint, std::vector<std::size_t>> by_direction;
  for (std::size_t j = 0; j < b.points.size(); ++j) by_direction[primitive_direction(b.points[j])].push_back(j);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    auto it = by_direction.find(primitive_direction(a.points[i]));
    if (it == by_direction.end()) continue;
    for (std::size_t j : it->second)
      if (same_projection(a.family, a.points[i], a.m, b.points[j], b.m)) out.emplace_back(i, j);
  }
  return out;
}

std::vector<std::pair<std::int64_t, Int>> hecke_weight_series(int n, std::span<const std::int64_t> levels) {
  std::vector<std::pair<std::int64_t, Int>> out;
  out.reserve(levels.size());
  for (auto m : levels) out.emplace_back(m, hecke_degree(n, m));
  return out;
}

}  // namespace levelset
