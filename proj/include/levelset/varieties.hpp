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
#include <span>
#include <string>
#include <vector>

#include "levelset/arith.hpp"
#include "levelset/matrix.hpp"

namespace levelset {

enum class FamilyKind { Determinant, Pfaffian, Quadratic };

/**
 * One of the three invariant polynomial families.
 *
 * Canonical coordinates:
 *   Determinant(n): n*n entries of X in row-major order.
 *   Pfaffian(n):    strict upper triangle x_ij (i < j) of a 2n x 2n skew
 *                   matrix, lexicographic in (i, j).
 *   Quadratic:      x_1 .. x_{r+s}; coefficients q_ij (i <= j) of the
 *                   polynomial sum q_ij x_i x_j, lexicographic in (i, j).
 */
class PolynomialFamily {
 public:
  static PolynomialFamily determinant(int n);
  static PolynomialFamily pfaffian(int n);
  /// Throws ArgumentError unless the form is nondegenerate of signature (r, s).
  static PolynomialFamily quadratic(int r, int s, std::vector<std::int64_t> coeffs);

  FamilyKind kind() const { return kind_; }
  int n() const { return n_; }
  int r() const { return r_; }
  int s() const { return s_; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

  /// Ambient dimension N.
  std::size_t dimension() const { return dimension_; }
  /// Homogeneity degree d.
  unsigned degree() const { return degree_; }

  /// Set for quadratic forms outside r+s >= 4, r >= 2, s >= 1.
  bool outside_hypotheses() const { return outside_hypotheses_; }

  /// Coefficient of x_i x_j (i <= j) for the quadratic family.
  std::int64_t quad_coeff(std::size_t i, std::size_t j) const;

  /// Stable textual key, e.g. "det(n=2)" or "quad(r=2,s=2;q=1,0,...)".
  std::string key() const;

  friend bool operator==(const PolynomialFamily&, const PolynomialFamily&) = default;

 private:
  PolynomialFamily() = default;

  FamilyKind kind_ = FamilyKind::Determinant;
  int n_ = 0;
  int r_ = 0;
  int s_ = 0;
  std::vector<std::int64_t> coeffs_;
  std::size_t dimension_ = 0;
  unsigned degree_ = 0;
  bool outside_hypotheses_ = false;
};

using AmbientPoint = std::vector<std::int64_t>;
using ProjectedPoint = std::vector<double>;

/// Exact value f(x). Throws DimensionError on a length mismatch and
/// OverflowError when the 128-bit range is exceeded.
Int eval(const PolynomialFamily& family, std::span<const std::int64_t> x);

/// Floating-point value of f at a real point.
double eval_real(const PolynomialFamily& family, std::span<const double> x);

/// Radial projection m^(-1/d) x onto the unit level.
ProjectedPoint project(const PolynomialFamily& family, std::span<const std::int64_t> x, std::int64_t m);

/// Skew-symmetric 2n x 2n matrix with the given strict upper triangle.
IntMatrix pfaffian_matrix_expand(std::span<const std::int64_t> x, int n);

/// Inverse of pfaffian_matrix_expand.
AmbientPoint pfaffian_upper_triangle(const IntMatrix& skew);

/// Pfaffian normalised so that the block matrix [[0, I], [-I, 0]] has value 1.
Int pfaffian(const IntMatrix& skew);

/// Number of ambient coordinates for Pfaffian(n).
std::size_t pfaffian_dimension(int n);

}  // namespace levelset
