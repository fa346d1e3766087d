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

#include "levelset/measure.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "levelset/rng.hpp"

namespace levelset {

namespace {

using RealMatrix = std::vector<double>;  // row-major, square

RealMatrix to_real(const IntMatrix& m) {
  RealMatrix out(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = static_cast<double>(m(i, j));
  return out;
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b, std::size_t n) {
  RealMatrix c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  return c;
}

RealMatrix transpose(const RealMatrix& a, std::size_t n) {
  RealMatrix t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a[i * n + j];
  return t;
}

RealMatrix skew_from_upper(std::span<const double> x, std::size_t size) {
  RealMatrix m(size * size, 0.0);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j, ++idx) {
      m[i * size + j] = x[idx];
      m[j * size + i] = -x[idx];
    }
  return m;
}

ProjectedPoint upper_from_skew(const RealMatrix& m, std::size_t size) {
  ProjectedPoint out;
  out.reserve(size * (size - 1) / 2);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) out.push_back(m[i * size + j]);
  return out;
}

}  // namespace

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!m.square()) throw ArgumentError("inverse of a non-square matrix");
  const Int det = determinant(m);
  if (det != 1 && det != -1) throw ArgumentError("matrix is not invertible over the integers (det " + to_string(det) + ")");
  const std::size_t n = m.rows();
  IntMatrix inv(n, n);
  if (n == 1) {
    inv(0, 0) = det;
    return inv;
  }
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      Int cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      // adj(m)(j, i) = cofactor(i, j); inverse = adj / det
      inv(j, i) = cof * det;
    }
  return inv;
}

Region box_region(const Window& window) {
  return Region{window, [window](std::span<const double> p) { return window.contains(p); }};
}

GroupAction GroupAction::identity() { return GroupAction{}; }

GroupAction GroupAction::determinant_pair(IntMatrix left, IntMatrix right) {
  GroupAction g;
  g.kind_ = Kind::DeterminantPair;
  g.left_inv_ = unimodular_inverse(left);
  g.right_inv_ = unimodular_inverse(right);
  g.left_ = std::move(left);
  g.right_ = std::move(right);
  return g;
}

GroupAction GroupAction::pfaffian_congruence(IntMatrix a) {
  GroupAction g;
  g.kind_ = Kind::PfaffianCongruence;
  g.left_inv_ = unimodular_inverse(a);
  g.left_ = std::move(a);
  return g;
}

GroupAction GroupAction::signed_permutation(std::vector<std::size_t> perm, std::vector<int> signs) {
  if (perm.size() != signs.size()) throw ArgumentError("permutation and sign vectors differ in length");
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) throw ArgumentError("not a permutation");
    seen[p] = true;
  }
  for (int s : signs)
    if (s != 1 && s != -1) throw ArgumentError("signs must be +1 or -1");
  GroupAction g;
  g.kind_ = Kind::SignedPermutation;
  g.perm_ = std::move(perm);
  g.signs_ = std::move(signs);
  return g;
}

void GroupAction::validate(const PolynomialFamily& family) const {
  switch (kind_) {
    case Kind::Identity:
      return;
    case Kind::DeterminantPair: {
      if (family.kind() != FamilyKind::Determinant) throw ArgumentError("left/right action applies to the determinant family");
      const auto n = static_cast<std::size_t>(family.n());
      if (left_.rows() != n || right_.rows() != n) throw ArgumentError("action matrices must be n x n");
      if (determinant(left_) != determinant(right_)) throw ArgumentError("det A != det B: the action rescales the determinant");
      return;
    }
    case Kind::PfaffianCongruence: {
      if (family.kind() != FamilyKind::Pfaffian) throw ArgumentError("congruence action applies to the Pfaffian family");
      if (left_.rows() != 2 * static_cast<std::size_t>(family.n())) throw ArgumentError("action matrix must be 2n x 2n");
      if (determinant(left_) != 1) throw ArgumentError("det A != 1: the congruence changes the Pfaffian");
      return;
    }
    case Kind::SignedPermutation: {
      if (family.kind() != FamilyKind::Quadratic) throw ArgumentError("signed permutations apply to quadratic forms");
      const std::size_t dim = family.dimension();
      if (perm_.size() != dim) throw ArgumentError("permutation length differs from the form's dimension");
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
          const std::int64_t moved = signs_[i] * signs_[j] * family.quad_coeff(perm_[i], perm_[j]);
          if (moved != family.quad_coeff(i, j)) throw ArgumentError("signed permutation does not preserve the form");
        }
      return;
    }
  }
}

ProjectedPoint GroupAction::apply(const PolynomialFamily& family, std::span<const double> x) const {
  switch (kind_) {
    case Kind::Identity:
      return ProjectedPoint(x.begin(), x.end());
    case Kind::DeterminantPair: {
      const auto n = static_cast<std::size_t>(family.n());
      RealMatrix xm(x.begin(), x.end());
      return multiply(multiply(to_real(left_), xm, n), to_real(right_inv_), n);
    }
    case Kind::PfaffianCongruence: {
      const std::size_t size = 2 * static_cast<std::size_t>(family.n());
      const RealMatrix a = to_real(left_);
      return upper_from_skew(multiply(multiply(transpose(a, size), skew_from_upper(x, size), size), a, size), size);
    }
    case Kind::SignedPermutation: {
      ProjectedPoint y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[perm_[i]] = signs_[i] * x[i];
      return y;
    }
  }
  return {};
}

ProjectedPoint GroupAction::apply_inverse(const PolynomialFamily& family, std::span<const double> y) const {
  switch (kind_) {
    case Kind::Identity:
      return ProjectedPoint(y.begin(), y.end());
    case Kind::DeterminantPair: {
      const auto n = static_cast<std::size_t>(family.n());
      RealMatrix ym(y.begin(), y.end());
      return multiply(multiply(to_real(left_inv_), ym, n), to_real(right_), n);
    }
    case Kind::PfaffianCongruence: {
      const std::size_t size = 2 * static_cast<std::size_t>(family.n());
      const RealMatrix inv = to_real(left_inv_);
      return upper_from_skew(multiply(multiply(transpose(inv, size), skew_from_upper(y, size), size), inv, size), size);
    }
    case Kind::SignedPermutation: {
      ProjectedPoint x(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) x[i] = signs_[i] * y[perm_[i]];
      return x;
    }
  }
  return {};
}

Window transform_window(const PolynomialFamily& family, const Window& window, const GroupAction& g) {
  g.validate(family);
  const std::size_t dim = window.dimension();
  if (dim != family.dimension()) throw DimensionError("window and family dimensions differ");
  if (dim > 24) throw ArgumentError("transform_window enumerates 2^N vertices; N is too large");
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  std::vector<double> vertex(dim);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim); ++mask) {
    for (std::size_t i = 0; i < dim; ++i) vertex[i] = (mask >> i & 1) ? window.hi(i) : window.lo(i);
    const ProjectedPoint image = g.apply(family, vertex);
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = std::min(lo[i], image[i]);
      hi[i] = std::max(hi[i], image[i]);
    }
  }
  std::vector<std::pair<double, double>> bounds(dim);
  for (std::size_t i = 0; i < dim; ++i) bounds[i] = {lo[i], hi[i]};
  return Window(std::move(bounds));
}

Region image_region(const PolynomialFamily& family, const Window& window, const GroupAction& g) {
  Window enclosing = transform_window(family, window, g);
  return Region{std::move(enclosing), [family, window, g](std::span<const double> y) {
                  return window.contains(g.apply_inverse(family, y));
                }};
}

MeasureEstimate estimate_measure(const PolynomialFamily& family, const Window& window, const MeasureOptions& options) {
  return estimate_measure(family, box_region(window), options);
}

MeasureEstimate estimate_measure(const PolynomialFamily& family, const Region& region, const MeasureOptions& options) {
  if (!(options.epsilon > 0.0) || !std::isfinite(options.epsilon)) throw ArgumentError("epsilon must be > 0");
  if (options.samples < kMinMeasureSamples) {
    throw ArgumentError("measure estimation needs at least " + std::to_string(kMinMeasureSamples) + " samples");
  }
  const Window& w = region.enclosing;
  const std::size_t dim = family.dimension();
  if (w.dimension() != dim) throw DimensionError("window and family dimensions differ");

  const unsigned d = family.degree();
  const double stretch = std::pow(1.0 + options.epsilon, 1.0 / d);
  std::vector<double> lo(dim), width(dim);
  double box_volume = 1.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double a = std::min(w.lo(i), w.lo(i) * stretch);
    const double b = std::max(w.hi(i), w.hi(i) * stretch);
    lo[i] = a;
    width[i] = b - a;
    box_volume *= width[i];
  }
  if (!(box_volume > 0.0) || !std::isfinite(box_volume)) throw DegenerateWindowError("sampling box has zero volume");

  const double upper = 1.0 + options.epsilon;
  const double inv_d = -1.0 / d;
  auto count_hits = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    std::vector<double> x(dim), p(dim);
    for (std::uint64_t s = begin; s < end; ++s) {
      for (std::size_t j = 0; j < dim; ++j) x[j] = lo[j] + width[j] * to_unit(counter_hash(options.seed, s, j));
      const double f = eval_real(family, x);
      if (!(f >= 1.0 && f <= upper)) continue;
      const double scale = std::pow(f, inv_d);
      for (std::size_t j = 0; j < dim; ++j) p[j] = x[j] * scale;
      if (region.contains(p)) ++hits;
    }
    return hits;
  };

  const std::uint64_t n = options.samples;
  const std::uint64_t parts = std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.threads, n));
  std::uint64_t hits = 0;
  if (parts == 1) {
    hits = count_hits(0, n);
  } else {
    std::vector<std::uint64_t> partial(parts, 0);
    std::vector<std::exception_ptr> errors(parts);
    std::vector<std::thread> workers;
    for (std::uint64_t t = 0; t < parts; ++t) {
      workers.emplace_back([&, t] {
        try {
          partial[t] = count_hits(n * t / parts, n * (t + 1) / parts);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : workers) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (auto h : partial) hits += h;
  }

  MeasureEstimate est;
  est.samples = n;
  est.hits = hits;
  est.epsilon = options.epsilon;
  est.seed = options.seed;
  est.box_volume = box_volume;
  const double scale = box_volume / options.epsilon;
  if (hits == 0) {
    est.no_hits = true;
    est.value = 0.0;
    est.std_error = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  est.value = p * scale;
  est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n)) * scale;
  return est;
}

double z_score(const MeasureEstimate& a, const MeasureEstimate& b) {
  const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  const double diff = std::fabs(a.value - b.value);
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

}  // namespace levelset
