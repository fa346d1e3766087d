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

#include "levelset/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "levelset/rng.hpp"

namespace levelset {

namespace {

void require_nonsingular(const IntMatrix& m, const char* what) {
  if (!m.square()) throw DimensionError(std::string(what) + " needs a square matrix");
  if (determinant(m) == 0) throw SingularMatrixError(std::string(what) + " of a singular matrix");
}

// row_target -= factor * row_source, applied to both matrices.
void row_axpy(IntMatrix& a, std::size_t target, std::size_t source, Int factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < a.cols(); ++j)
    a(target, j) = checked_sub(a(target, j), checked_mul(factor, a(source, j)));
}

void col_axpy(IntMatrix& a, std::size_t target, std::size_t source, Int factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < a.rows(); ++i)
    a(i, target) = checked_sub(a(i, target), checked_mul(factor, a(i, source)));
}

void negate_row(IntMatrix& a, std::size_t row) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = checked_neg(a(row, j));
}

// Number of HNFs of determinant p^k in dimension n.
Int prime_power_degree(int n, std::int64_t p, unsigned k) {
  // g(dim, e) = sum_{t=0}^{e} p^{t(dim-1)} g(dim-1, e-t), g(1, e) = 1.
  std::vector<Int> prev(k + 1, 1);
  for (int dim = 2; dim <= n; ++dim) {
    std::vector<Int> next(k + 1, 0);
    const Int step = checked_pow(p, static_cast<unsigned>(dim - 1));
    for (unsigned e = 0; e <= k; ++e) {
      Int weight = 1;
      for (unsigned t = 0; t <= e; ++t) {
        next[e] = checked_add(next[e], checked_mul(weight, prev[e - t]));
        if (t < e) weight = checked_mul(weight, step);
      }
    }
    prev = std::move(next);
  }
  return prev[k];
}

}  // namespace

std::string SmithChain::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < chain.size(); ++i) out << (i ? "," : "") << levelset::to_string(chain[i]);
  return out.str();
}

HermiteForm hnf(const IntMatrix& m) {
  require_nonsingular(m, "hnf");
  const std::size_t n = m.rows();
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(n);

  for (std::size_t c = 0; c < n; ++c) {
    // Euclid on column c over rows c..n-1 until a single nonzero remains.
    while (true) {
      std::size_t best = n;
      for (std::size_t i = c; i < n; ++i) {
        if (h(i, c) == 0) continue;
        if (best == n || abs_value(h(i, c)) < abs_value(h(best, c))) best = i;
      }
      // Nonsingular input guarantees a nonzero entry.
      h.swap_rows(best, c);
      u.swap_rows(best, c);
      bool done = true;
      for (std::size_t i = c + 1; i < n; ++i) {
        if (h(i, c) == 0) continue;
        Int q = floor_div(h(i, c), h(c, c));
        row_axpy(h, i, c, q);
        row_axpy(u, i, c, q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(c, c) < 0) {
      negate_row(h, c);
      negate_row(u, c);
    }
    for (std::size_t i = 0; i < c; ++i) {
      Int q = floor_div(h(i, c), h(c, c));
      row_axpy(h, i, c, q);
      row_axpy(u, i, c, q);
    }
  }
  return {std::move(h), std::move(u)};
}

bool is_hermite_normal_form(const IntMatrix& h) {
  if (!h.square()) return false;
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (h(i, i) <= 0) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (h(i, j) != 0) return false;
    for (std::size_t j = i + 1; j < n; ++j)
      if (h(i, j) < 0 || h(i, j) >= h(j, j)) return false;
  }
  return true;
}

SmithChain snf(const IntMatrix& m) {
  require_nonsingular(m, "snf");
  const std::size_t n = m.rows();
  IntMatrix a = m;

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t bi = n, bj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          if (bi == n || abs_value(a(i, j)) < abs_value(a(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      a.swap_rows(bi, t);
      a.swap_cols(bj, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        row_axpy(a, i, t, floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        col_axpy(a, j, t, floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block; otherwise fold the
      // offending row in and repeat.
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == n) break;
      row_axpy(a, t, bad, -1);
    }
  }

  SmithChain out;
  out.chain.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.chain.push_back(abs_value(a(i, i)));
  return out;
}

Int hecke_degree(int n, std::int64_t m) {
  if (n < 1) throw ArgumentError("hecke_degree requires n >= 1");
  if (m < 1) throw ArgumentError("hecke_degree requires m >= 1");
  Int total = 1;
  for (const auto& [p, k] : factorize(m)) total = checked_mul(total, prime_power_degree(n, p, k));
  return total;
}

std::vector<IntMatrix> enumerate_hnf(int n, std::int64_t m, std::uint64_t budget) {
  if (n < 1) throw ArgumentError("enumerate_hnf requires n >= 1");
  if (m < 1) throw ArgumentError("enumerate_hnf requires m >= 1");
  // Upper bound independent of hecke_degree: each of the tau(m)^(n-1) ordered
  // factorisations contributes at most m^(n-1) matrices.
  long double divisors = 0;
  for (std::int64_t d = 1; d <= m; ++d)
    if (m % d == 0) divisors += 1;
  const long double bound = std::pow(static_cast<long double>(m) * divisors, static_cast<long double>(n - 1));
  if (bound > static_cast<long double>(budget)) {
    std::ostringstream msg;
    msg << "enumerate_hnf(" << n << ", " << m << ") may produce up to " << static_cast<double>(bound)
        << " matrices, over the budget of " << budget;
    throw BudgetError(msg.str());
  }

  const std::size_t size = static_cast<std::size_t>(n);
  std::vector<IntMatrix> out;

  // Ordered factorisations of m into n positive diagonal entries.
  std::vector<std::int64_t> diag;
  std::function<void(std::int64_t)> choose_diag = [&](std::int64_t rest) {
    if (diag.size() + 1 == size) {
      diag.push_back(rest);
      // Free entries: (i, j) with i < j ranges over [0, diag[j]).
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t j = 0; j < size; ++j)
        for (std::size_t i = 0; i < j; ++i) cells.emplace_back(i, j);
      IntMatrix h(size, size);
      for (std::size_t i = 0; i < size; ++i) h(i, i) = diag[i];
      std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k == cells.size()) {
          out.push_back(h);
          return;
        }
        auto [i, j] = cells[k];
        for (std::int64_t v = 0; v < diag[j]; ++v) {
          h(i, j) = v;
          fill(k + 1);
        }
        h(i, j) = 0;
      };
      fill(0);
      diag.pop_back();
      return;
    }
    for (std::int64_t d = 1; d <= rest; ++d) {
      if (rest % d != 0) continue;
      diag.push_back(d);
      choose_diag(rest / d);
      diag.pop_back();
    }
  };
  choose_diag(m);

  std::sort(out.begin(), out.end(), [](const IntMatrix& a, const IntMatrix& b) { return a.data() < b.data(); });
  return out;
}

Int pfaffian_local_weight(int n, std::int64_t p) {
  if (n < 1) throw ArgumentError("pfaffian_local_weight requires n >= 1");
  if (!is_prime(p)) throw ArgumentError("pfaffian_local_weight requires a prime, got " + std::to_string(p));
  Int total = 0;
  Int power = 1;
  for (int i = 0; i <= 2 * n - 2; ++i) {
    total = checked_add(total, power);
    if (i < 2 * n - 2) power = checked_mul(power, p);
  }
  return total;
}

IntMatrix random_unimodular(int n, std::uint64_t seed, int steps) {
  if (n < 2) throw ArgumentError("random_unimodular requires n >= 2");
  if (steps < 1) throw ArgumentError("random_unimodular requires steps >= 1");
  SplitMix64 rng(seed);
  IntMatrix u = IntMatrix::identity(static_cast<std::size_t>(n));
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
    auto j = static_cast<std::size_t>(rng.uniform_int(0, n - 2));
    if (j >= i) ++j;
    std::int64_t c = 0;
    while (c == 0) c = rng.uniform_int(-2, 2);
    // Left-multiply by I + c e_ij: row i += c * row j.
    row_axpy(u, i, j, -c);
  }
  return u;
}

}  // namespace levelset
