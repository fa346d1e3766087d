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

#include "levelset/arith.hpp"
#include "levelset/rng.hpp"

using namespace levelset;

TEST_CASE("checked arithmetic throws instead of wrapping") {
  const Int big = static_cast<Int>(~static_cast<unsigned __int128>(0) >> 1);
  CHECK_THROWS_AS(checked_add(big, 1), OverflowError);
  CHECK_THROWS_AS(checked_sub(-big - 1, 1), OverflowError);
  CHECK_THROWS_AS(checked_mul(big / 2 + 1, 2), OverflowError);
  CHECK_THROWS_AS(checked_neg(-big - 1), OverflowError);
  CHECK_THROWS_AS(checked_pow(10, 40), OverflowError);
  CHECK(checked_pow(10, 38) == parse_int("100000000000000000000000000000000000000"));
  CHECK(checked_mul(-7, 6) == -42);
}

TEST_CASE("floor division and remainder") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_mod(-7, 2) == 1);
  CHECK(floor_div(7, -2) == -4);
  CHECK(floor_mod(7, -2) == 1);
  CHECK(gcd(-12, 18) == 6);
  CHECK(gcd(0, 0) == 0);
}

TEST_CASE("integer roots") {
  for (Int a = 0; a < 5000; ++a) {
    const Int r = isqrt(a);
    CHECK(r * r <= a);
    CHECK((r + 1) * (r + 1) > a);
  }
  const Int huge = checked_mul(Int{3037000499LL} * 1000, Int{3037000499LL} * 1000);
  CHECK(isqrt(huge) == Int{3037000499LL} * 1000);
  CHECK(isqrt(huge - 1) == Int{3037000499LL} * 1000 - 1);
  Int root = 0;
  CHECK(is_perfect_square(144, &root));
  CHECK(root == 12);
  CHECK_FALSE(is_perfect_square(-4));
  CHECK(exact_root(1000, 3) == 10);
  CHECK(exact_root(1001, 3) == 0);
  CHECK(exact_root(1, 5) == 1);
}

TEST_CASE("primes, squarefree, factorisation") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(12));
  const auto f = factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<std::int64_t, unsigned>{2, 3});
  CHECK(f[1] == std::pair<std::int64_t, unsigned>{3, 2});
  CHECK(f[2] == std::pair<std::int64_t, unsigned>{5, 1});
  for (std::int64_t m = 1; m < 3000; ++m) {
    std::int64_t prod = 1;
    for (auto [p, k] : factorize(m))
      for (unsigned i = 0; i < k; ++i) prod *= p;
    CHECK(prod == m);
  }
}

TEST_CASE("text conversion round trips") {
  for (const char* s : {"0", "-1", "170141183460469231731687303715884105727", "-170141183460469231731687303715884105728"})
    CHECK(to_string(parse_int(s)) == s);
  CHECK_THROWS_AS(parse_int("12a"), Error);
  CHECK_THROWS_AS(parse_int("170141183460469231731687303715884105728"), Error);
  CHECK_THROWS_AS(narrow_to_i64(Int{1} << 70), OverflowError);
}

TEST_CASE("counter hash is deterministic and spreads") {
  CHECK(counter_hash(1, 2, 3) == counter_hash(1, 2, 3));
  CHECK(counter_hash(1, 2, 3) != counter_hash(1, 2, 4));
  SplitMix64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.uniform_int(-9, 9);
    CHECK(v >= -9);
    CHECK(v <= 9);
  }
  const double u = to_unit(counter_hash(5, 0, 0));
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}
