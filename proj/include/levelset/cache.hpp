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

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "levelset/enumeration.hpp"

namespace levelset {

/// Point cache CSV:
///   # family=<key> m=<m> window-hash=<16 hex digits> version=<tag>
///   x_1,x_2,...,x_N
///   ...
std::string serialize_point_set(const PointSet& set);
void write_point_set(std::ostream& out, const PointSet& set);

/// Parses a point file for the given family and window. Throws ArgumentError
/// on a malformed file or a header that does not match.
PointSet parse_point_set(std::istream& in, const PolynomialFamily& family, const Window& window);

/// Writes `contents` to `path` through a temporary file and an atomic rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Directory of point files keyed by (family, m, window hash, version).
/// Readers never see a partial file; concurrent writers of one key leave
/// exactly one complete file.
class PointCache {
 public:
  explicit PointCache(std::filesystem::path directory, std::string version = kPointSetVersion);

  std::filesystem::path path_for(const PolynomialFamily& family, std::int64_t m, const Window& window) const;

  /// Miss on absent, stale, or corrupt files (corruption is reported through the warning sink).
  std::optional<PointSet> get(const PolynomialFamily& family, std::int64_t m, const Window& window) const;
  void put(const PointSet& set) const;

  const std::filesystem::path& directory() const { return directory_; }

  void set_warning_sink(std::function<void(const std::string&)> sink) { warn_ = std::move(sink); }

 private:
  std::filesystem::path directory_;
  std::string version_;
  std::function<void(const std::string&)> warn_;
};

}  // namespace levelset
