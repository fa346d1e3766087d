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
#include <functional>
#include <span>
#include <vector>

#include "levelset/enumeration.hpp"
#include "levelset/matrix.hpp"
#include "levelset/varieties.hpp"

namespace levelset {

/**
 * Shell estimate of the invariant measure of a window on the unit level:
 *
 *   mu(W) ~ (1/eps) * Leb{ x : f(x) in [1, 1+eps], f(x)^(-1/d) x in W }
 *
 * sampled uniformly in the smallest box B holding every t*w with w in W and
 * t in [1, (1+eps)^(1/d)]. Only ratios of estimates are meaningful.
 */
struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;  // NaN when no_hits
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double box_volume = 0.0;
  bool no_hits = false;
};

struct MeasureOptions {
  double epsilon = 0.01;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

inline constexpr std::uint64_t kMinMeasureSamples = 10'000;

/// A measurable subset of the unit level: an enclosing box plus an exact
/// membership test for projected points.
struct Region {
  Window enclosing;
  std::function<bool(std::span<const double>)> contains;
};

Region box_region(const Window& window);

/**
 * A linear map preserving f:
 *   Determinant: X -> A X B^{-1} with det A == det B == +-1
 *   Pfaffian:    X -> A^T X A with det A == 1
 *   Quadratic:   signed coordinate permutation y[perm[i]] = sign[i] * x[i]
 *                preserving the form.
 */
class GroupAction {
 public:
  static GroupAction determinant_pair(IntMatrix left, IntMatrix right);
  static GroupAction pfaffian_congruence(IntMatrix a);
  static GroupAction signed_permutation(std::vector<std::size_t> perm, std::vector<int> signs);
  static GroupAction identity();

  /// Throws ArgumentError when the map is not invertible over Z or moves f.
  void validate(const PolynomialFamily& family) const;

  ProjectedPoint apply(const PolynomialFamily& family, std::span<const double> x) const;
  ProjectedPoint apply_inverse(const PolynomialFamily& family, std::span<const double> x) const;

  /// True for permutations and sign changes, which map boxes onto boxes.
  bool maps_boxes_to_boxes() const { return kind_ == Kind::SignedPermutation || kind_ == Kind::Identity; }

 private:
  enum class Kind { Identity, DeterminantPair, PfaffianCongruence, SignedPermutation };
  Kind kind_ = Kind::Identity;
  IntMatrix left_, left_inv_, right_, right_inv_;
  std::vector<std::size_t> perm_;
  std::vector<int> signs_;
};

/// Bounding box of the image of every window vertex under g.
Window transform_window(const PolynomialFamily& family, const Window& window, const GroupAction& g);

/// Exact image g(W): enclosing box plus the membership test g^{-1}(y) in W.
Region image_region(const PolynomialFamily& family, const Window& window, const GroupAction& g);

MeasureEstimate estimate_measure(const PolynomialFamily& family, const Window& window,
                                 const MeasureOptions& options = {});

MeasureEstimate estimate_measure(const PolynomialFamily& family, const Region& region,
                                 const MeasureOptions& options = {});

/// |a - b| / sqrt(se_a^2 + se_b^2); infinity when both errors vanish and a != b.
double z_score(const MeasureEstimate& a, const MeasureEstimate& b);

/// Integer inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace levelset
