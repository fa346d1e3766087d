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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "levelset/arith.hpp"
#include "levelset/matrix.hpp"

namespace levelset {

/**
 * Row-style Hermite normal form: u * input == h, |det u| == 1, h upper
 * triangular with positive diagonal, and every entry above a pivot reduced
 * into [0, h(j, j)) where j is the pivot's column.
 */
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
};

/// Smith invariant factors d_1 | d_2 | ... | d_n.
struct SmithChain {
  std::vector<Int> chain;

  std::string to_string() const;
  friend bool operator==(const SmithChain&, const SmithChain&) = default;
  friend auto operator<=>(const SmithChain& a, const SmithChain& b) { return a.chain <=> b.chain; }
};

/// Throws SingularMatrixError when det m == 0.
HermiteForm hnf(const IntMatrix& m);

/// Throws SingularMatrixError when det m == 0.
SmithChain snf(const IntMatrix& m);

/// Checks the Hermite invariants on a square matrix.
bool is_hermite_normal_form(const IntMatrix& h);

/// Number of n x n Hermite normal forms of determinant m, i.e. the number of
/// index-m sublattices of Z^n. Multiplicative in m.
Int hecke_degree(int n, std::int64_t m);

inline constexpr std::uint64_t kDefaultHnfBudget = 10'000'000;

/// All Hermite normal forms of determinant m, sorted lexicographically by
/// row-major entries. Throws BudgetError when the list would exceed `budget`.
std::vector<IntMatrix> enumerate_hnf(int n, std::int64_t m, std::uint64_t budget = kDefaultHnfBudget);

/// sum_{i=0}^{2n-2} p^i; throws ArgumentError unless p is prime.
Int pfaffian_local_weight(int n, std::int64_t p);

/// Product of `steps` elementary shears I + c e_ij (i != j, c in [-2, 2] \ {0}).
IntMatrix random_unimodular(int n, std::uint64_t seed, int steps);

}  // namespace levelset
