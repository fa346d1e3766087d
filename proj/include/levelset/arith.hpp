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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace levelset {

/// Exact integer type used for every polynomial value and lattice entry.
using Int = __int128;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamilyError : public Error {
 public:
  using Error::Error;
};

class DegenerateWindowError : public Error {
 public:
  using Error::Error;
};

// Checked 128-bit operations. Any wraparound throws OverflowError.
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);
Int checked_pow(Int base, unsigned exponent);

Int abs_value(Int a);
Int gcd(Int a, Int b);

/// Floor division and non-negative remainder (divisor must be nonzero).
Int floor_div(Int a, Int b);
Int floor_mod(Int a, Int b);

/// Largest r with r*r <= a; a must be non-negative.
Int isqrt(Int a);
bool is_perfect_square(Int a, Int* root = nullptr);

/// Returns k >= 1 with k^d == a if a is a perfect d-th power, 0 otherwise.
Int exact_root(Int a, unsigned d);

bool is_prime(std::int64_t p);
bool is_squarefree(std::int64_t m);

/// Prime factorisation by trial division, ascending primes.
std::vector<std::pair<std::int64_t, unsigned>> factorize(std::int64_t m);

std::string to_string(Int value);
Int parse_int(std::string_view text);

std::int64_t narrow_to_i64(Int value);

}  // namespace levelset
