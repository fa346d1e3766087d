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

#include "levelset/varieties.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace levelset {

namespace {

void require_length(const PolynomialFamily& family, std::size_t length) {
  if (length != family.dimension()) {
    std::ostringstream msg;
    msg << family.key() << " expects " << family.dimension() << " coordinates, got " << length;
    throw DimensionError(msg.str());
  }
}

// (-1)^(n(n-1)/2): converts the textbook Pfaffian to the normalisation Pff(v0) = 1.
int pfaffian_sign(int n) { return ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1; }

// Expansion along the first remaining index. `alive` lists the indices still
// present, in increasing order.
template <typename T, typename Entry>
T pfaffian_expand(const Entry& entry, std::vector<int>& alive) {
  if (alive.empty()) return T(1);
  const int first = alive.front();
  T total = T(0);
  for (std::size_t k = 1; k < alive.size(); ++k) {
    const int partner = alive[k];
    T a = entry(first, partner);
    if (a == T(0)) continue;
    std::vector<int> rest;
    rest.reserve(alive.size() - 2);
    for (std::size_t t = 1; t < alive.size(); ++t)
      if (t != k) rest.push_back(alive[t]);
    T sub = pfaffian_expand<T>(entry, rest);
    if constexpr (std::is_same_v<T, Int>) {
      T term = checked_mul(a, sub);
      total = (k % 2 == 1) ? checked_add(total, term) : checked_sub(total, term);
    } else {
      total += ((k % 2 == 1) ? 1.0 : -1.0) * a * sub;
    }
  }
  return total;
}

std::size_t upper_index(std::size_t i, std::size_t j, std::size_t size) {
  // Position of (i, j), i < j, in the lexicographic strict upper triangle.
  return i * size - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace

std::size_t pfaffian_dimension(int n) { return static_cast<std::size_t>(n) * (2 * n - 1); }

PolynomialFamily PolynomialFamily::determinant(int n) {
  if (n < 2) throw ArgumentError("determinant family requires n >= 2");
  PolynomialFamily f;
  f.kind_ = FamilyKind::Determinant;
  f.n_ = n;
  f.dimension_ = static_cast<std::size_t>(n) * n;
  f.degree_ = static_cast<unsigned>(n);
  return f;
}

PolynomialFamily PolynomialFamily::pfaffian(int n) {
  if (n < 2) throw ArgumentError("pfaffian family requires n >= 2");
  PolynomialFamily f;
  f.kind_ = FamilyKind::Pfaffian;
  f.n_ = n;
  f.dimension_ = pfaffian_dimension(n);
  f.degree_ = static_cast<unsigned>(n);
  return f;
}

PolynomialFamily PolynomialFamily::quadratic(int r, int s, std::vector<std::int64_t> coeffs) {
  if (r < 0 || s < 0 || r + s < 1) throw ArgumentError("quadratic signature must be non-negative with r+s >= 1");
  const std::size_t dim = static_cast<std::size_t>(r + s);
  if (coeffs.size() != dim * (dim + 1) / 2) {
    std::ostringstream msg;
    msg << "quadratic form in " << dim << " variables needs " << dim * (dim + 1) / 2
        << " coefficients q_ij (i <= j), got " << coeffs.size();
    throw DimensionError(msg.str());
  }
  Eigen::MatrixXd gram(dim, dim);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j, ++idx) {
      double q = static_cast<double>(coeffs[idx]);
      if (i == j) {
        gram(i, i) = q;
      } else {
        gram(i, j) = q / 2.0;
        gram(j, i) = q / 2.0;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  const auto& values = solver.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  int positive = 0;
  int negative = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values[k] > 1e-9 * scale) ++positive;
    else if (values[k] < -1e-9 * scale) ++negative;
  }
  if (positive != r || negative != s) {
    std::ostringstream msg;
    msg << "quadratic form has signature (" << positive << "," << negative << ") with "
        << (static_cast<int>(dim) - positive - negative) << " zero eigenvalues; expected (" << r << "," << s << ")";
    throw ArgumentError(msg.str());
  }
  PolynomialFamily f;
  f.kind_ = FamilyKind::Quadratic;
  f.r_ = r;
  f.s_ = s;
  f.coeffs_ = std::move(coeffs);
  f.dimension_ = dim;
  f.degree_ = 2;
  f.outside_hypotheses_ = !(r + s >= 4 && r >= 2 && s >= 1);
  return f;
}

std::int64_t PolynomialFamily::quad_coeff(std::size_t i, std::size_t j) const {
  if (kind_ != FamilyKind::Quadratic) throw UnsupportedFamilyError("quad_coeff on a non-quadratic family");
  if (i > j) std::swap(i, j);
  if (j >= dimension_) throw DimensionError("quadratic coefficient index out of range");
  // Row i of the upper triangle including the diagonal starts at i*dim - i(i-1)/2.
  return coeffs_[i * dimension_ - i * (i - 1) / 2 + (j - i)];
}

std::string PolynomialFamily::key() const {
  std::ostringstream out;
  switch (kind_) {
    case FamilyKind::Determinant:
      out << "det(n=" << n_ << ")";
      break;
    case FamilyKind::Pfaffian:
      out << "pff(n=" << n_ << ")";
      break;
    case FamilyKind::Quadratic:
      out << "quad(r=" << r_ << ",s=" << s_ << ";q=";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) out << (i ? "," : "") << coeffs_[i];
      out << ")";
      break;
  }
  return out.str();
}

IntMatrix pfaffian_matrix_expand(std::span<const std::int64_t> x, int n) {
  if (n < 1) throw ArgumentError("pfaffian size must be positive");
  if (x.size() != pfaffian_dimension(n)) {
    std::ostringstream msg;
    msg << "pfaffian coordinates for n=" << n << " need " << pfaffian_dimension(n) << " entries, got " << x.size();
    throw DimensionError(msg.str());
  }
  const std::size_t size = 2 * static_cast<std::size_t>(n);
  IntMatrix m(size, size);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j, ++idx) {
      m(i, j) = x[idx];
      m(j, i) = -static_cast<Int>(x[idx]);
    }
  }
  return m;
}

AmbientPoint pfaffian_upper_triangle(const IntMatrix& skew) {
  if (!skew.square() || skew.rows() % 2 != 0) throw DimensionError("expected an even square matrix");
  AmbientPoint out;
  const std::size_t size = skew.rows();
  out.reserve(size * (size - 1) / 2);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) out.push_back(narrow_to_i64(skew(i, j)));
  return out;
}

Int pfaffian(const IntMatrix& skew) {
  if (!skew.square() || skew.rows() % 2 != 0) throw DimensionError("pfaffian needs an even square matrix");
  for (std::size_t i = 0; i < skew.rows(); ++i) {
    if (skew(i, i) != 0) throw ArgumentError("pfaffian of a matrix with nonzero diagonal");
    for (std::size_t j = i + 1; j < skew.rows(); ++j)
      if (skew(i, j) != -skew(j, i)) throw ArgumentError("pfaffian of a non-skew-symmetric matrix");
  }
  std::vector<int> alive(skew.rows());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<int>(i);
  auto entry = [&](int i, int j) { return skew(i, j); };
  Int value = pfaffian_expand<Int>(entry, alive);
  return pfaffian_sign(static_cast<int>(skew.rows() / 2)) > 0 ? value : checked_neg(value);
}

Int eval(const PolynomialFamily& family, std::span<const std::int64_t> x) {
  require_length(family, x.size());
  switch (family.kind()) {
    case FamilyKind::Determinant: {
      const std::size_t n = static_cast<std::size_t>(family.n());
      if (n == 2) {
        return checked_sub(checked_mul(x[0], x[3]), checked_mul(x[1], x[2]));
      }
      if (n == 3) {
        auto minor = [&](int a, int b, int c, int d) {
          return checked_sub(checked_mul(x[a], x[b]), checked_mul(x[c], x[d]));
        };
        Int t0 = checked_mul(x[0], minor(4, 8, 5, 7));
        Int t1 = checked_mul(x[1], minor(3, 8, 5, 6));
        Int t2 = checked_mul(x[2], minor(3, 7, 4, 6));
        return checked_add(checked_sub(t0, t1), t2);
      }
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = x[i];
      return determinant(m);
    }
    case FamilyKind::Pfaffian: {
      const std::size_t size = 2 * static_cast<std::size_t>(family.n());
      if (size == 4) {
        // -(x12 x34 - x13 x24 + x14 x23)
        Int v = checked_add(checked_sub(checked_mul(x[0], x[5]), checked_mul(x[1], x[4])), checked_mul(x[2], x[3]));
        return checked_neg(v);
      }
      std::vector<int> alive(size);
      for (std::size_t i = 0; i < size; ++i) alive[i] = static_cast<int>(i);
      auto entry = [&](int i, int j) -> Int { return x[upper_index(i, j, size)]; };
      Int value = pfaffian_expand<Int>(entry, alive);
      return pfaffian_sign(family.n()) > 0 ? value : checked_neg(value);
    }
    case FamilyKind::Quadratic: {
      const std::size_t dim = family.dimension();
      const auto& q = family.coeffs();
      Int total = 0;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j, ++idx) {
          if (q[idx] == 0) continue;
          total = checked_add(total, checked_mul(checked_mul(q[idx], x[i]), x[j]));
        }
      }
      return total;
    }
  }
  throw UnsupportedFamilyError("unknown family");
}

double eval_real(const PolynomialFamily& family, std::span<const double> x) {
  require_length(family, x.size());
  switch (family.kind()) {
    case FamilyKind::Determinant: {
      const int n = family.n();
      if (n == 2) return x[0] * x[3] - x[1] * x[2];
      if (n == 3) {
        return x[0] * (x[4] * x[8] - x[5] * x[7]) - x[1] * (x[3] * x[8] - x[5] * x[6]) +
               x[2] * (x[3] * x[7] - x[4] * x[6]);
      }
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(x.data(), n, n);
      return m.partialPivLu().determinant();
    }
    case FamilyKind::Pfaffian: {
      const std::size_t size = 2 * static_cast<std::size_t>(family.n());
      if (size == 4) {
        // x = (x12, x13, x14, x23, x24, x34)
        return -(x[0] * x[5] - x[1] * x[4] + x[2] * x[3]);
      }
      std::vector<int> alive(size);
      for (std::size_t i = 0; i < size; ++i) alive[i] = static_cast<int>(i);
      auto entry = [&](int i, int j) -> double { return x[upper_index(i, j, size)]; };
      return pfaffian_sign(family.n()) * pfaffian_expand<double>(entry, alive);
    }
    case FamilyKind::Quadratic: {
      const std::size_t dim = family.dimension();
      const auto& q = family.coeffs();
      double total = 0.0;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j, ++idx) total += static_cast<double>(q[idx]) * x[i] * x[j];
      return total;
    }
  }
  throw UnsupportedFamilyError("unknown family");
}

ProjectedPoint project(const PolynomialFamily& family, std::span<const std::int64_t> x, std::int64_t m) {
  require_length(family, x.size());
  if (m < 1) throw ArgumentError("projection level must be >= 1");
  ProjectedPoint out(x.size());
  if (m == 1) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<double>(x[i]);
    return out;
  }
  const double scale = std::pow(static_cast<double>(m), -1.0 / family.degree());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<double>(x[i]) * scale;
  return out;
}

}  // namespace levelset
