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

#include <string>
#include <vector>

#include "levelset/enumeration.hpp"

namespace levelset::testing {

struct EnumerationFixture {
  PolynomialFamily family;
  std::int64_t m;
  Window window;
};

inline Window shifted_cube(std::size_t dim, double radius, double shift) {
  std::vector<std::pair<double, double>> b(dim);
  for (std::size_t i = 0; i < dim; ++i) b[i] = {-radius + (i % 2 ? shift : -shift), radius + (i % 2 ? shift : -shift)};
  return Window(b);
}

inline std::vector<PolynomialFamily> quadratic_fixture_forms() {
  return {
      PolynomialFamily::quadratic(2, 2, {1, 0, 0, 0, 1, 0, 0, -1, 0, -1}),
      PolynomialFamily::quadratic(3, 1, {1, 0, 0, 0, 1, 0, 0, 1, 0, -1}),
      PolynomialFamily::quadratic(2, 2, {1, 1, 0, 0, 1, 0, 0, -1, 1, -2}),
      PolynomialFamily::quadratic(2, 2, {1, 1, 0, 0, 1, 1, 0, -1, 1, -1}),  // cross terms chain every coordinate
      PolynomialFamily::quadratic(2, 2, {0, 1, 0, 0, 0, 0, 0, 0, 1, 0}),  // x1 x2 + x3 x4: no square terms
  };
}

/// The oracle grid: Det n=2 (m <= 6, radius <= 2.5), Det n=3 (m <= 3,
/// radius <= 1.5), Pff n=2 (m <= 4, radius <= 2.5), signature-(2,2) and
/// (3,1) quadratic forms (m <= 20, radius <= 4.5). `full` adds the large radii.
inline std::vector<EnumerationFixture> enumeration_fixtures(bool full) {
  std::vector<EnumerationFixture> out;
  const auto det2 = PolynomialFamily::determinant(2);
  for (std::int64_t m = 1; m <= 6; ++m) {
    for (double r : {0.5, 1.0, 1.5, 2.0, 2.5}) out.push_back({det2, m, Window::cube(4, r)});
    out.push_back({det2, m, shifted_cube(4, 1.25, 0.4)});
  }
  const auto det3 = PolynomialFamily::determinant(3);
  for (std::int64_t m = 1; m <= 3; ++m) {
    for (double r : {0.5, 1.0}) out.push_back({det3, m, Window::cube(9, r)});
    if (full) out.push_back({det3, m, Window::cube(9, 1.5)});
    out.push_back({det3, m, shifted_cube(9, 0.9, 0.3)});
  }
  const auto pff2 = PolynomialFamily::pfaffian(2);
  for (std::int64_t m = 1; m <= 4; ++m) {
    for (double r : {0.5, 1.0, 1.5, 2.0}) out.push_back({pff2, m, Window::cube(6, r)});
    if (full) out.push_back({pff2, m, Window::cube(6, 2.5)});
    out.push_back({pff2, m, shifted_cube(6, 1.2, 0.5)});
  }
  for (const auto& q : quadratic_fixture_forms()) {
    for (std::int64_t m = 1; m <= 20; ++m) {
      out.push_back({q, m, Window::cube(4, 1.5)});
      if (full || m % 5 == 1) out.push_back({q, m, Window::cube(4, 3.0)});
      if (full && (m <= 6 || m % 4 == 0)) out.push_back({q, m, Window::cube(4, 4.5)});
      if (m % 3 == 0) out.push_back({q, m, shifted_cube(4, 2.0, 0.7)});
    }
  }
  return out;
}

}  // namespace levelset::testing
