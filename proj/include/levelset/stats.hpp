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

#include <optional>
#include <span>
#include <vector>

namespace levelset {

/// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation. Empty when fewer than two pairs or a constant input.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

std::optional<double> median(std::vector<double> values);

/// Sample standard deviation over the mean. Empty below two values or at mean zero.
std::optional<double> coefficient_of_variation(std::span<const double> values);

}  // namespace levelset
