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

#include <set>

#include "levelset/orbits.hpp"
#include "levelset/rng.hpp"

using namespace levelset;

namespace {

const PolynomialFamily kDet2 = PolynomialFamily::determinant(2);

bool squarefree_oracle(std::int64_t m) {
  for (std::int64_t p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

bool fundamental_oracle(std::int64_t m) {
  if (m % 4 == 1 && squarefree_oracle(m)) return true;
  return m % 4 == 0 && (m / 4 % 4 == 2 || m / 4 % 4 == 3) && squarefree_oracle(m / 4);
}

// Divisor chains d_1 | ... | d_n with product m, by direct recursion.
std::uint64_t chains_oracle(int n, std::int64_t m, std::int64_t previous) {
  if (n == 1) return m % previous == 0 ? 1 : 0;
  std::uint64_t total = 0;
  for (std::int64_t d = previous; d <= m; d += previous) {
    if (m % d) continue;
    // remaining factors are multiples of d, so d^(n-1) must divide m / d
    total += chains_oracle(n - 1, m / d, d);
  }
  return total;
}

}  // namespace

TEST_CASE("orbit classes") {
  CHECK(orbit_class(kDet2, AmbientPoint{1, 0, 0, 7}).chain == std::vector<Int>{1, 7});
  CHECK(orbit_class(kDet2, AmbientPoint{2, 0, 0, 2}).chain == std::vector<Int>{2, 2});
  const auto det3 = PolynomialFamily::determinant(3);
  CHECK(orbit_class(det3, AmbientPoint{1, 0, 0, 0, 1, 0, 0, 0, 5}).chain == std::vector<Int>{1, 1, 5});
  CHECK_THROWS_AS(orbit_class(PolynomialFamily::pfaffian(2), AmbientPoint{1, 0, 0, 0, 0, 1}), UnsupportedFamilyError);
  CHECK_THROWS_AS(orbit_class(kDet2, AmbientPoint{0, 1, 1, 0}), ArgumentError);
}

TEST_CASE("orbit class is invariant under unimodular pairs") {
  SplitMix64 rng(12);
  for (std::uint64_t s = 0; s < 100; ++s) {
    IntMatrix x(2, 2);
    do {
      for (std::size_t i = 0; i < 4; ++i) x(i / 2, i % 2) = rng.uniform_int(-8, 8);
    } while (determinant(x) <= 0);
    const auto a = random_unimodular(2, 2 * s, 8);
    const auto b = random_unimodular(2, 2 * s + 1, 8);
    const auto y = a * x * b;
    AmbientPoint px, py;
    for (auto v : x.data()) px.push_back(static_cast<std::int64_t>(v));
    for (auto v : y.data()) py.push_back(static_cast<std::int64_t>(v));
    CHECK(orbit_class(kDet2, px) == orbit_class(kDet2, py));
  }
}

TEST_CASE("orbit histograms") {
  const auto one = orbit_histogram(kDet2, 1, Window::cube(4, 2.0));
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].first.chain == std::vector<Int>{1, 1});
  const auto four = orbit_histogram(kDet2, 4, Window::cube(4, 2.0));
  std::set<std::string> seen;
  std::uint64_t sum = 0;
  for (const auto& [chain, count] : four.rows) {
    seen.insert(chain.to_string());
    sum += count;
  }
  CHECK(seen == std::set<std::string>{"1,4", "2,2"});
  CHECK(four.complete());
  CHECK(sum == four.total);
  CHECK(sum == count_points(kDet2, 4, Window::cube(4, 2.0)));
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    const auto h = orbit_histogram(kDet2, p, Window::cube(4, 1.5));
    REQUIRE(h.rows.size() == 1);
    CHECK(h.rows[0].first.chain == std::vector<Int>{1, p});
  }
  for (std::int64_t m = 1; m <= 36; ++m) {
    const auto h = orbit_histogram(kDet2, m, Window::cube(4, 1.5));
    CHECK(h.rows.size() <= h.possible_chains);
  }
  CHECK_THROWS_AS(orbit_histogram(PolynomialFamily::pfaffian(2), 1, Window::cube(6, 1)), UnsupportedFamilyError);
}

TEST_CASE("divisor chain counts") {
  for (int n = 1; n <= 4; ++n)
    for (std::int64_t m = 1; m <= 200; ++m) CHECK(divisor_chain_count(n, m) == chains_oracle(n, m, 1));
}

TEST_CASE("fundamental discriminants") {
  CHECK(is_fundamental_discriminant(5));
  CHECK(is_fundamental_discriminant(8));
  CHECK_FALSE(is_fundamental_discriminant(9));
  CHECK(is_fundamental_discriminant(1));
  CHECK(is_fundamental_discriminant(12));
  CHECK_FALSE(is_fundamental_discriminant(16));
  for (std::int64_t m = 1; m <= 10000; ++m) CHECK(is_fundamental_discriminant(m) == fundamental_oracle(m));
  const auto list = fundamental_discriminants_up_to(30);
  CHECK(list == std::vector<std::int64_t>{1, 5, 8, 12, 13, 17, 21, 24, 28, 29});
  CHECK_THROWS_AS(is_fundamental_discriminant(0), ArgumentError);
}

TEST_CASE("radial scaling witness") {
  CHECK(radial_scaling_witness(kDet2, 3, 12) == 2);
  CHECK_FALSE(radial_scaling_witness(kDet2, 3, 3).has_value());
  CHECK_FALSE(radial_scaling_witness(kDet2, 3, 11).has_value());
  CHECK(radial_scaling_witness(PolynomialFamily::determinant(3), 2, 54) == 3);
  // Scaling by the witness maps level m0 points to level m.
  const auto base = enumerate_points(kDet2, 3, Window::cube(4, 1.5));
  REQUIRE(base.size() > 0);
  const auto k = *radial_scaling_witness(kDet2, 3, 27);
  for (auto x : base.points) {
    for (auto& v : x) v *= k;
    CHECK(eval(kDet2, x) == 27);
  }
  const auto scaled = enumerate_points(kDet2, 27, Window::cube(4, 1.5));
  const auto pairs = shared_projections(base, scaled);
  CHECK(pairs.size() == base.size());
  for (auto [i, j] : pairs) CHECK(same_projection(kDet2, base.points[i], 3, scaled.points[j], 27));
  CHECK(same_projection(kDet2, AmbientPoint{1, 1, 0, 3}, 3, AmbientPoint{2, 2, 0, 6}, 12));
  CHECK_FALSE(same_projection(kDet2, AmbientPoint{1, 1, 0, 3}, 3, AmbientPoint{2, 2, 0, 6}, 11));
}

TEST_CASE("hecke weight series") {
  const std::vector<std::int64_t> ms{1, 2, 3, 4};
  const auto series = hecke_weight_series(2, ms);
  CHECK(series[0].second == 1);
  CHECK(series[1].second == 3);
  CHECK(series[2].second == 4);
  CHECK(series[3].second == 7);
  const std::vector<std::int64_t> pq{35};
  CHECK(hecke_weight_series(2, pq)[0].second == 6 * 8);
  const std::vector<std::int64_t> two{2};
  CHECK(hecke_weight_series(3, two)[0].second == 7);
}
