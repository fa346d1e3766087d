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

#include "levelset/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace levelset {

namespace {

constexpr Int kIntMax = static_cast<Int>((~static_cast<unsigned __int128>(0)) >> 1);
constexpr Int kIntMin = -kIntMax - 1;

[[noreturn]] void overflow(const char* op) {
  throw OverflowError(std::string("128-bit integer overflow in ") + op);
}

}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) overflow("add");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) overflow("sub");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("mul");
  return r;
}

Int checked_neg(Int a) {
  if (a == kIntMin) overflow("neg");
  return -a;
}

Int checked_pow(Int base, unsigned exponent) {
  Int result = 1;
  for (unsigned i = 0; i < exponent; ++i) result = checked_mul(result, base);
  return result;
}

Int abs_value(Int a) { return a < 0 ? checked_neg(a) : a; }

Int gcd(Int a, Int b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int floor_div(Int a, Int b) {
  if (b == 0) throw ArgumentError("division by zero");
  if (a == kIntMin && b == -1) overflow("div");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int floor_mod(Int a, Int b) {
  Int r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

Int isqrt(Int a) {
  if (a < 0) throw ArgumentError("isqrt of negative value");
  if (a < 2) return a;
  Int r = static_cast<Int>(std::sqrt(static_cast<long double>(a)));
  // floor(sqrt(2^127 - 1)); keeps r*r representable.
  const Int limit = static_cast<Int>(13043817825332782212ULL);
  if (r > limit) r = limit;
  while (r > 0 && r * r > a) --r;
  while (r < limit && (r + 1) * (r + 1) <= a) ++r;
  return r;
}

bool is_perfect_square(Int a, Int* root) {
  if (a < 0) return false;
  Int r = isqrt(a);
  if (r * r != a) return false;
  if (root) *root = r;
  return true;
}

Int exact_root(Int a, unsigned d) {
  if (a < 1 || d == 0) return 0;
  if (d == 1) return a;
  long double guess = std::pow(static_cast<long double>(a), 1.0L / d);
  Int base = static_cast<Int>(guess + 0.5L);
  for (Int k = std::max<Int>(1, base - 2); k <= base + 2; ++k) {
    Int p = 1;
    bool over = false;
    for (unsigned i = 0; i < d; ++i) {
      if (__builtin_mul_overflow(p, k, &p) || p > a) {
        over = true;
        break;
      }
    }
    if (!over && p == a) return k;
  }
  return 0;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0 || p % 3 == 0) return false;
  for (std::int64_t i = 5; i * i <= p; i += 6) {
    if (p % i == 0 || p % (i + 2) == 0) return false;
  }
  return true;
}

bool is_squarefree(std::int64_t m) {
  if (m < 1) return false;
  for (const auto& [p, e] : factorize(m)) {
    if (e > 1) return false;
  }
  return true;
}

std::vector<std::pair<std::int64_t, unsigned>> factorize(std::int64_t m) {
  if (m < 1) throw ArgumentError("factorize expects a positive integer");
  std::vector<std::pair<std::int64_t, unsigned>> out;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::string to_string(Int value) {
  if (value == 0) return "0";
  bool negative = value < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                                 : static_cast<unsigned __int128>(value);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int parse_int(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i >= text.size()) throw ArgumentError("empty integer literal");
  Int value = 0;
  std::size_t digits = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r') break;
    if (c < '0' || c > '9') {
      throw ArgumentError("invalid integer literal '" + std::string(text) + "'");
    }
    value = checked_add(checked_mul(value, 10), negative ? -(c - '0') : (c - '0'));
    ++digits;
  }
  for (; i < text.size(); ++i) {
    if (text[i] != ' ' && text[i] != '\t' && text[i] != '\r') {
      throw ArgumentError("invalid integer literal '" + std::string(text) + "'");
    }
  }
  if (digits == 0) throw ArgumentError("empty integer literal");
  return value;
}

std::int64_t narrow_to_i64(Int value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    overflow("narrowing to 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

}  // namespace levelset
