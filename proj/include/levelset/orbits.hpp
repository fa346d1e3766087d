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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "levelset/enumeration.hpp"
#include "levelset/lattice.hpp"

namespace levelset {

/// Orbit labels are Smith chains, i.e. GL_n(Z) x GL_n(Z) classes. A chain
/// might split into several SL_n(Z) x SL_n(Z) orbits; that is not resolved.
inline constexpr const char* kOrbitCaveat =
    "orbit labels are Smith normal form classes (GL_n(Z) x GL_n(Z)); SL_n(Z) x SL_n(Z) splitting is not resolved";

struct OrbitHistogram {
  PolynomialFamily family;
  std::int64_t m = 0;
  Window window;
  std::vector<std::pair<SmithChain, std::uint64_t>> rows;  // sorted by chain
  std::uint64_t total = 0;
  std::uint64_t possible_chains = 0;  // divisor chains d_1 | ... | d_n with product m

  /// True when every divisor chain of m has a representative in the window.
  bool complete() const { return rows.size() == possible_chains; }
};

/// Smith chain of the n x n matrix x. Throws UnsupportedFamilyError for
/// non-determinant families and ArgumentError when det x <= 0.
SmithChain orbit_class(const PolynomialFamily& family, std::span<const std::int64_t> x);

OrbitHistogram orbit_histogram(const PolynomialFamily& family, std::int64_t m, const Window& window,
                               const EnumerationOptions& options = {});

/// Groups an existing point set by Smith chain.
OrbitHistogram orbit_histogram(const PointSet& points);

/// Number of chains d_1 | d_2 | ... | d_n of positive integers with product m.
std::uint64_t divisor_chain_count(int n, std::int64_t m);

/// Squarefree m = 1 mod 4, or m = 4k with k squarefree and k = 2, 3 mod 4.
bool is_fundamental_discriminant(std::int64_t m);

std::vector<std::int64_t> fundamental_discriminants_up_to(std::int64_t max);

/// k >= 2 with m == m0 * k^d, if one exists.
std::optional<std::int64_t> radial_scaling_witness(const PolynomialFamily& family, std::int64_t m0, std::int64_t m);

/// True when m0^(-1/d) x == m^(-1/d) y, decided exactly.
bool same_projection(const PolynomialFamily& family, std::span<const std::int64_t> x, std::int64_t m0,
                     std::span<const std::int64_t> y, std::int64_t m);

/// Pairs (i, j) with pr(a.points[i]) == pr(b.points[j]).
std::vector<std::pair<std::size_t, std::size_t>> shared_projections(const PointSet& a, const PointSet& b);

std::vector<std::pair<std::int64_t, Int>> hecke_weight_series(int n, std::span<const std::int64_t> levels);

}  // namespace levelset
