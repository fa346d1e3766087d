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

#include "levelset/cache.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "levelset/rng.hpp"

namespace levelset {

namespace {

std::string header_line(const std::string& family, std::int64_t m, const std::string& window_hash,
                        const std::string& version) {
  return "# family=" + family + " m=" + std::to_string(m) + " window-hash=" + window_hash + " version=" + version;
}

std::uint64_t text_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

void write_point_set(std::ostream& out, const PointSet& set) {
  out << header_line(set.family.key(), set.m, set.window.hash_hex(), set.version) << '\n';
  for (const auto& p : set.points) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
    out << '\n';
  }
}

std::string serialize_point_set(const PointSet& set) {
  std::ostringstream out;
  write_point_set(out, set);
  return out.str();
}

PointSet parse_point_set(std::istream& in, const PolynomialFamily& family, const Window& window) {
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("point file is empty");
  // Header fields are space-separated key=value pairs after "# ".
  if (line.rfind("# ", 0) != 0) throw ArgumentError("point file header must start with '# '");
  std::istringstream fields(line.substr(2));
  std::string token, fam, m_text, hash, version;
  while (fields >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) throw ArgumentError("malformed header field '" + token + "'");
    const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
    if (key == "family") fam = value;
    else if (key == "m") m_text = value;
    else if (key == "window-hash") hash = value;
    else if (key == "version") version = value;
    else throw ArgumentError("unknown header field '" + key + "'");
  }
  if (fam != family.key()) throw ArgumentError("point file is for family " + fam + ", expected " + family.key());
  if (hash != window.hash_hex()) throw ArgumentError("point file window hash " + hash + " does not match");
  if (m_text.empty() || version.empty()) throw ArgumentError("point file header lacks m or version");
  const std::int64_t m = narrow_to_i64(parse_int(m_text));

  PointSet set{family, m, window};
  set.version = version;
  set.strategy = "file";
  const std::size_t dim = family.dimension();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    AmbientPoint p;
    p.reserve(dim);
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      p.push_back(narrow_to_i64(parse_int(std::string_view(line).substr(start, comma - start))));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (p.size() != dim) throw ArgumentError("point file line " + std::to_string(line_no) + " has the wrong arity");
    if (!set.points.empty() && !(set.points.back() < p)) {
      throw ArgumentError("point file line " + std::to_string(line_no) + " breaks strict ordering");
    }
    set.points.push_back(std::move(p));
  }
  return set;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  static std::atomic<std::uint64_t> counter{0};
  const std::uint64_t tag = mix64(static_cast<std::uint64_t>(::getpid()) * kGolden +
                                  std::hash<std::thread::id>{}(std::this_thread::get_id()) + counter.fetch_add(1));
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, ".tmp.%016llx", static_cast<unsigned long long>(tag));
  std::filesystem::path tmp = path;
  tmp += suffix;
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw ArgumentError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ArgumentError("cannot rename into '" + path.string() + "': " + ec.message());
  }
}

PointCache::PointCache(std::filesystem::path directory, std::string version)
    : directory_(std::move(directory)), version_(std::move(version)),
      warn_([](const std::string& msg) { std::cerr << "levelset: warning: " << msg << '\n'; }) {
  std::filesystem::create_directories(directory_);
}

std::filesystem::path PointCache::path_for(const PolynomialFamily& family, std::int64_t m, const Window& window) const {
  const std::string key = header_line(family.key(), m, window.hash_hex(), version_);
  char name[48];
  std::snprintf(name, sizeof name, "points-%016llx.csv", static_cast<unsigned long long>(text_hash(key)));
  return directory_ / name;
}

std::optional<PointSet> PointCache::get(const PolynomialFamily& family, std::int64_t m, const Window& window) const {
  const auto path = path_for(family, m, window);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    PointSet set = parse_point_set(in, family, window);
    if (set.m != m || set.version != version_) return std::nullopt;
    // A truncated or edited body must not pass as a hit.
    const IntegerBox box = scaled_integer_box(family, m, window);
    for (const auto& p : set.points) {
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] < box.lo[i] || p[i] > box.hi[i]) throw ArgumentError("cached point lies outside the window");
      if (eval(family, p) != m) throw ArgumentError("cached point is not on level " + std::to_string(m));
    }
    set.strategy = "cache";
    return set;
  } catch (const Error& e) {
    if (warn_) warn_("ignoring corrupt cache file " + path.string() + ": " + e.what());
    return std::nullopt;
  }
}

void PointCache::put(const PointSet& set) const {
  if (set.version != version_) throw ArgumentError("point set version differs from the cache version");
  write_file_atomic(path_for(set.family, set.m, set.window), serialize_point_set(set));
}

}  // namespace levelset
