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

#include "levelset/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "levelset/orbits.hpp"

namespace levelset {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(std::string_view(text).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ArgumentError(what + ": '" + text + "' is not a number");
  return v;
}

std::int64_t parse_i64(const std::string& text, const std::string& what) {
  try {
    return narrow_to_i64(parse_int(text));
  } catch (const Error&) {
    throw ArgumentError(what + ": '" + text + "' is not an integer");
  }
}

std::uint64_t parse_count(const std::string& text, const std::string& what) {
  // Accepts plain integers and exact forms such as 1e6.
  const double v = parse_double(text, what);
  if (!(v >= 0) || v > 1.8e19 || v != std::floor(v)) throw ArgumentError(what + ": '" + text + "' is not a count");
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& text, const std::string& what) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ArgumentError(what + ": expected true or false, got '" + text + "'");
}

std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (const auto& part : split(text, ',')) {
    const auto v = parse_i64(part, what);
    if (v < 0) throw ArgumentError(what + ": negative entry " + part);
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

std::size_t CellGrid::cell_count() const {
  std::size_t n = 1;
  for (auto s : splits) n *= s;
  return n;
}

std::vector<std::size_t> CellGrid::cell_coordinates(std::size_t index) const {
  std::vector<std::size_t> coords(splits.size());
  for (std::size_t k = splits.size(); k-- > 0;) {
    coords[k] = index % splits[k];
    index /= splits[k];
  }
  return coords;
}

double CellGrid::face(const Window& window, std::size_t k, std::size_t j) const {
  const auto [lo, hi] = window.bounds()[axes[k]];
  if (j == 0) return lo;
  if (j >= splits[k]) return hi;
  return lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(splits[k]);
}

std::vector<Window> CellGrid::cells(const Window& window) const {
  std::vector<Window> out;
  const std::size_t count = cell_count();
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    auto bounds = window.bounds();
    const auto coords = cell_coordinates(c);
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const double a = face(window, k, coords[k]);
      const double b = face(window, k, coords[k] + 1);
      bounds[axes[k]] = {a, b};
    }
    out.emplace_back(std::move(bounds));
  }
  return out;
}

std::vector<std::int64_t> diagonal_form(int r, int s) {
  const int dim = r + s;
  std::vector<std::int64_t> q;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) q.push_back(i == j ? (i < r ? 1 : -1) : 0);
  return q;
}

Window parse_window_spec(const std::string& text) {
  std::vector<std::pair<double, double>> bounds;
  for (const auto& part : split(text, ',')) {
    const auto pos = part.find(':');
    if (pos == std::string::npos) throw ArgumentError("window axis '" + part + "' is not lo:hi");
    bounds.emplace_back(parse_double(trim(part.substr(0, pos)), "window"), parse_double(trim(part.substr(pos + 1)), "window"));
  }
  return Window(std::move(bounds));
}

std::vector<std::int64_t> parse_level_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_i64(part, "levels"));
  return out;
}

std::vector<std::int64_t> parse_level_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2 && parts.size() != 3) throw ArgumentError("level_range must be start:stop[:step]");
  const auto start = parse_i64(parts[0], "level_range");
  const auto stop = parse_i64(parts[1], "level_range");
  const auto step = parts.size() == 3 ? parse_i64(parts[2], "level_range") : 1;
  if (step < 1) throw ArgumentError("level_range step must be positive");
  if (start > stop) throw ArgumentError("level_range start exceeds stop");
  std::vector<std::int64_t> out;
  for (std::int64_t m = start; m <= stop; m += step) out.push_back(m);
  return out;
}

std::vector<std::int64_t> parse_coefficients(const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<std::int64_t> out;
  std::string token;
  while (in >> token) {
    if (token[0] == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
      continue;
    }
    out.push_back(parse_i64(token, "quadratic coefficients"));
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (levels.empty()) throw ArgumentError("config has no levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) throw ArgumentError("levels must be >= 1");
    if (i > 0 && levels[i] <= levels[i - 1]) throw ArgumentError("levels must be strictly increasing");
  }
  if (window.dimension() != family.dimension()) throw DimensionError("window dimension does not match the family");
  if (grid.axes.size() != grid.splits.size()) throw ArgumentError("grid_axes and grid_splits differ in length");
  for (std::size_t k = 0; k < grid.axes.size(); ++k) {
    if (grid.axes[k] >= family.dimension()) throw ArgumentError("grid axis out of range");
    if (grid.splits[k] < 1) throw ArgumentError("grid splits must be >= 1");
    for (std::size_t l = 0; l < k; ++l)
      if (grid.axes[l] == grid.axes[k]) throw ArgumentError("grid axes repeat");
  }
  if (ratio_window_a.has_value() != ratio_window_b.has_value())
    throw ArgumentError("ratio_window_a and ratio_window_b must be given together");
  if (ratio_window_a && (ratio_window_a->dimension() != family.dimension() || ratio_window_b->dimension() != family.dimension()))
    throw DimensionError("ratio window dimension does not match the family");
  if (!(measure.epsilon > 0)) throw ArgumentError("epsilon must be positive");
  if (measure.samples < kMinMeasureSamples)
    throw ArgumentError("samples must be at least " + std::to_string(kMinMeasureSamples));
  if (omega_trend && family.kind() != FamilyKind::Determinant)
    throw UnsupportedFamilyError("omega_trend needs the determinant family");
}

ExperimentConfig parse_config(std::istream& in, const std::string& base_dir) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ArgumentError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(body.substr(0, eq)), value = trim(body.substr(eq + 1));
    if (key.empty()) throw ArgumentError("config line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(key, value).second) throw ArgumentError("config key '" + key + "' appears twice");
  }

  static const char* const known[] = {
      "family", "n", "signature", "qcoeffs", "levels", "level_range", "level_filter", "window", "window_radius",
      "window_file", "grid_axes", "grid_splits", "ratio_window_a", "ratio_window_b", "epsilon", "samples", "seed",
      "enum_budget", "brute_budget", "cache_dir", "out", "threads", "omega_trend", "timings"};
  for (const auto& [key, value] : kv)
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      throw ArgumentError("unknown config key '" + key + "'");

  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto resolve = [&](const std::string& path) {
    std::filesystem::path p(path);
    return (p.is_absolute() ? p : std::filesystem::path(base_dir) / p).string();
  };

  ExperimentConfig cfg;
  const std::string family = get("family") ? *get("family") : "";
  if (family == "det" || family == "pff") {
    if (!get("n")) throw ArgumentError("config needs n for family " + family);
    const auto n = parse_i64(*get("n"), "n");
    if (n < 1 || n > 64) throw ArgumentError("n out of range");
    cfg.family = family == "det" ? PolynomialFamily::determinant(static_cast<int>(n))
                                 : PolynomialFamily::pfaffian(static_cast<int>(n));
    if (get("signature") || get("qcoeffs")) throw ArgumentError("signature and qcoeffs only apply to family quad");
  } else if (family == "quad") {
    if (!get("signature")) throw ArgumentError("config needs signature for family quad");
    const auto rs = split(*get("signature"), ',');
    if (rs.size() != 2) throw ArgumentError("signature must be r,s");
    const auto r = parse_i64(rs[0], "signature"), s = parse_i64(rs[1], "signature");
    if (r < 0 || s < 0 || r + s < 1 || r + s > 64) throw ArgumentError("signature out of range");
    std::vector<std::int64_t> q;
    if (const auto* qc = get("qcoeffs")) {
      // Inline list, or a path to a file holding one.
      const bool inline_list = qc->find_first_not_of("0123456789-+, \t") == std::string::npos;
      q = parse_coefficients(inline_list ? *qc : read_text(resolve(*qc)));
    } else {
      q = diagonal_form(static_cast<int>(r), static_cast<int>(s));
    }
    cfg.family = PolynomialFamily::quadratic(static_cast<int>(r), static_cast<int>(s), std::move(q));
    if (get("n")) throw ArgumentError("n does not apply to family quad");
  } else {
    throw ArgumentError("config family must be det, pff or quad");
  }

  if (get("levels") && get("level_range")) throw ArgumentError("give levels or level_range, not both");
  if (const auto* v = get("levels")) cfg.levels = parse_level_list(*v);
  else if (const auto* v = get("level_range")) cfg.levels = parse_level_range(*v);
  else throw ArgumentError("config needs levels or level_range");
  std::sort(cfg.levels.begin(), cfg.levels.end());
  if (std::adjacent_find(cfg.levels.begin(), cfg.levels.end()) != cfg.levels.end())
    throw ArgumentError("levels contain a duplicate");
  if (const auto* v = get("level_filter")) {
    if (*v == "fundamental") cfg.level_filter = LevelFilter::Fundamental;
    else if (*v != "none") throw ArgumentError("level_filter must be none or fundamental");
  }
  if (cfg.level_filter == LevelFilter::Fundamental) {
    for (auto m : cfg.levels)
      if (m < 1) throw ArgumentError("levels must be >= 1");
    std::erase_if(cfg.levels, [](std::int64_t m) { return !is_fundamental_discriminant(m); });
  }

  const int window_keys = (get("window") != nullptr) + (get("window_radius") != nullptr) + (get("window_file") != nullptr);
  if (window_keys != 1) throw ArgumentError("give exactly one of window, window_radius, window_file");
  if (const auto* v = get("window")) cfg.window = parse_window_spec(*v);
  else if (const auto* v = get("window_radius")) cfg.window = Window::cube(cfg.family.dimension(), parse_double(*v, "window_radius"));
  else cfg.window = Window::read_file(resolve(*get("window_file")));

  if (get("grid_axes")) cfg.grid.axes = parse_index_list(*get("grid_axes"), "grid_axes");
  if (get("grid_splits")) cfg.grid.splits = parse_index_list(*get("grid_splits"), "grid_splits");
  if (const auto* v = get("ratio_window_a")) cfg.ratio_window_a = parse_window_spec(*v);
  if (const auto* v = get("ratio_window_b")) cfg.ratio_window_b = parse_window_spec(*v);
  if (const auto* v = get("epsilon")) cfg.measure.epsilon = parse_double(*v, "epsilon");
  if (const auto* v = get("samples")) cfg.measure.samples = parse_count(*v, "samples");
  if (const auto* v = get("seed")) cfg.measure.seed = parse_count(*v, "seed");
  if (const auto* v = get("enum_budget")) cfg.enumeration.budget = parse_double(*v, "enum_budget");
  if (const auto* v = get("brute_budget")) cfg.enumeration.brute_budget = parse_double(*v, "brute_budget");
  if (const auto* v = get("cache_dir")) cfg.cache_dir = resolve(*v);
  if (const auto* v = get("out")) cfg.out = resolve(*v);
  if (const auto* v = get("threads")) {
    const auto t = parse_count(*v, "threads");
    if (t < 1 || t > 1024) throw ArgumentError("threads must be in 1..1024");
    cfg.enumeration.threads = cfg.measure.threads = static_cast<unsigned>(t);
  }
  if (const auto* v = get("omega_trend")) cfg.omega_trend = parse_bool(*v, "omega_trend");
  if (const auto* v = get("timings")) cfg.timings = parse_bool(*v, "timings");
  cfg.validate();
  return cfg;
}

ExperimentConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config '" + path + "'");
  const auto parent = std::filesystem::path(path).parent_path();
  return parse_config(in, parent.empty() ? "." : parent.string());
}

}  // namespace levelset
