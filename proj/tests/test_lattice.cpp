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

#include "levelset/lattice.hpp"
#include "levelset/rng.hpp"

using namespace levelset;

namespace {

IntMatrix mat(std::size_t n, std::vector<Int> v) { return IntMatrix::from_row_major(n, n, v); }

IntMatrix random_nonsingular(SplitMix64& rng, std::size_t n) {
  while (true) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform_int(-6, 6);
    if (determinant(m) != 0) return m;
  }
}

Int sigma1(std::int64_t m) {
  Int s = 0;
  for (std::int64_t d = 1; d <= m; ++d)
    if (m % d == 0) s += d;
  return s;
}

// Upper triangular matrices with diagonal (a, b, c), abc = m: entries above
// the pivot in column j range over [0, h_jj).
Int count_hnf3(std::int64_t m) {
  Int total = 0;
  for (std::int64_t a = 1; a <= m; ++a) {
    if (m % a) continue;
    for (std::int64_t b = 1; b <= m / a; ++b) {
      if ((m / a) % b) continue;
      const std::int64_t c = m / a / b;
      total += Int{b} * c * c;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("hermite form examples") {
  const auto id = IntMatrix::identity(3);
  const auto f = hnf(id);
  CHECK(f.h == id);
  CHECK(f.u == id);
  const auto m = mat(2, {0, 1, 2, 0});
  const auto g = hnf(m);
  CHECK(g.h == mat(2, {2, 0, 0, 1}));
  CHECK(g.u * m == g.h);
  CHECK_THROWS_AS(hnf(mat(2, {1, 2, 2, 4})), SingularMatrixError);
}

TEST_CASE("hermite form invariants on random input") {
  SplitMix64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto m = random_nonsingular(rng, n);
    const auto f = hnf(m);
    CHECK(f.u * m == f.h);
    const Int du = determinant(f.u);
    CHECK((du == 1 || du == -1));
    CHECK(is_hermite_normal_form(f.h));
    CHECK(hnf(f.h).h == f.h);
    const auto v = random_unimodular(static_cast<int>(n), 1000 + t, 12);
    CHECK(hnf(v * m).h == f.h);
  }
}

TEST_CASE("smith chain examples and invariance") {
  CHECK(snf(mat(2, {2, 0, 0, 3})).chain == std::vector<Int>{1, 6});
  CHECK(snf(mat(2, {2, 0, 0, 4})).chain == std::vector<Int>{2, 4});
  CHECK(snf(mat(2, {2, 0, 0, 4})).to_string() == "2,4");
  CHECK_THROWS_AS(snf(IntMatrix(2, 2)), SingularMatrixError);
  SplitMix64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 2;
    const auto m = random_nonsingular(rng, n);
    const auto chain = snf(m).chain;
    Int prod = 1;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      prod *= chain[i];
      if (i) CHECK(chain[i] % chain[i - 1] == 0);
    }
    CHECK(prod == abs_value(determinant(m)));
    const auto v = random_unimodular(static_cast<int>(n), 2 * t + 1, 10);
    const auto w = random_unimodular(static_cast<int>(n), 2 * t + 2, 10);
    CHECK(snf(v * m * w).chain == chain);
  }
}

TEST_CASE("smith chain from minors in the 2x2 case") {
  SplitMix64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const auto m = random_nonsingular(rng, 2);
    const Int d1 = gcd(gcd(m(0, 0), m(0, 1)), gcd(m(1, 0), m(1, 1)));
    const auto chain = snf(m).chain;
    CHECK(chain[0] == d1);
    CHECK(chain[1] == abs_value(determinant(m)) / d1);
  }
}

TEST_CASE("hecke degree against independent counts") {
  for (int n = 2; n <= 4; ++n) CHECK(hecke_degree(n, 1) == 1);
  CHECK(hecke_degree(2, 2) == 3);
  for (std::int64_t m = 1; m <= 60; ++m) {
    CHECK(hecke_degree(2, m) == sigma1(m));
    CHECK(hecke_degree(3, m) == count_hnf3(m));
  }
}

TEST_CASE("enumerated hermite forms") {
  const auto one = enumerate_hnf(2, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == IntMatrix::identity(2));
  const auto two = enumerate_hnf(2, 2);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == mat(2, {1, 0, 0, 2}));
  CHECK(two[1] == mat(2, {1, 1, 0, 2}));
  CHECK(two[2] == mat(2, {2, 0, 0, 1}));
  for (int n = 2; n <= 3; ++n)
    for (std::int64_t m = 1; m <= 24; ++m) {
      const auto list = enumerate_hnf(n, m);
      CHECK(Int(list.size()) == hecke_degree(n, m));
      for (std::size_t i = 0; i < list.size(); ++i) {
        CHECK(is_hermite_normal_form(list[i]));
        CHECK(determinant(list[i]) == m);
        if (i) CHECK(list[i - 1].data() < list[i].data());
      }
    }
  CHECK_THROWS_AS(enumerate_hnf(3, 720720, 1000), BudgetError);
}

TEST_CASE("hecke degree is multiplicative") {
  for (int n = 2; n <= 3; ++n)
    for (std::int64_t a = 1; a <= 30; ++a)
      for (std::int64_t b = 1; b <= 30; ++b)
        if (gcd(a, b) == 1) CHECK(hecke_degree(n, a * b) == hecke_degree(n, a) * hecke_degree(n, b));
}

TEST_CASE("prime power leading order") {
  const std::int64_t primes[] = {2, 3, 5, 7, 11, 13};
  for (int n = 2; n <= 3; ++n)
    for (unsigned k = 1; k <= 3; ++k) {
      double previous = 1e300;
      for (auto p : primes) {
        const double ratio =
            static_cast<double>(hecke_degree(n, static_cast<std::int64_t>(checked_pow(p, k)))) /
            static_cast<double>(checked_pow(p, k * (n - 1)));
        CHECK(ratio >= 1.0);
        CHECK(ratio <= 4.0);
        CHECK(ratio <= previous);
        previous = ratio;
      }
    }
}

TEST_CASE("pfaffian local weight") {
  CHECK(pfaffian_local_weight(2, 2) == 7);
  CHECK(pfaffian_local_weight(2, 3) == 13);
  CHECK(pfaffian_local_weight(3, 2) == 31);
  CHECK_THROWS_AS(pfaffian_local_weight(2, 4), ArgumentError);
}

TEST_CASE("random unimodular matrices") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto u = random_unimodular(3, s, 20);
    CHECK(determinant(u) == 1);
    CHECK(u == random_unimodular(3, s, 20));
  }
  CHECK(random_unimodular(3, 1, 20) != random_unimodular(3, 2, 20));
  CHECK_THROWS_AS(random_unimodular(3, 1, 0), ArgumentError);
}
