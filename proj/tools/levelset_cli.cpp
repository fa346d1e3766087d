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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "levelset/cache.hpp"
#include "levelset/config.hpp"
#include "levelset/harness.hpp"
#include "levelset/lattice.hpp"
#include "levelset/measure.hpp"
#include "levelset/orbits.hpp"

using namespace levelset;

namespace {

struct FamilyArgs {
  std::string family;
  int n = 0;
  std::string signature;
  std::string qcoeffs;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--family", family, "det, pff or quad")->required()->check(CLI::IsMember({"det", "pff", "quad"}));
    cmd->add_option("--n", n, "matrix size for det and pff");
    cmd->add_option("--signature", signature, "R,S for quad");
    cmd->add_option("--qcoeffs", qcoeffs, "file of upper-triangle coefficients for quad (default: diagonal form)");
  }

  PolynomialFamily build() const {
    if (family == "quad") {
      const auto comma = signature.find(',');
      if (comma == std::string::npos) throw ArgumentError("--signature R,S is required for quad");
      const int r = std::stoi(signature.substr(0, comma));
      const int s = std::stoi(signature.substr(comma + 1));
      std::vector<std::int64_t> q;
      if (qcoeffs.empty()) {
        q = diagonal_form(r, s);
      } else {
        std::ifstream in(qcoeffs);
        if (!in) throw ArgumentError("cannot open '" + qcoeffs + "'");
        std::ostringstream text;
        text << in.rdbuf();
        q = parse_coefficients(text.str());
      }
      return PolynomialFamily::quadratic(r, s, std::move(q));
    }
    if (n < 1) throw ArgumentError("--n N is required for " + family);
    return family == "det" ? PolynomialFamily::determinant(n) : PolynomialFamily::pfaffian(n);
  }
};

void print_points(std::ostream& out, const PointSet& set) { write_point_set(out, set); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer points on level sets of invariant polynomials"};
  app.require_subcommand(1);

  // enumerate
  FamilyArgs enum_family;
  std::int64_t enum_m = 0;
  std::string enum_window, enum_out, enum_cache;
  bool brute = false;
  unsigned enum_threads = 1;
  auto* enumerate = app.add_subcommand("enumerate", "integer points of f = m in the scaled window");
  enum_family.add_to(enumerate);
  enumerate->add_option("--m", enum_m, "level")->required();
  enumerate->add_option("--window", enum_window, "window file (N lines 'lo hi')")->required();
  enumerate->add_flag("--brute-force", brute, "scan the whole integer box");
  enumerate->add_option("--out", enum_out, "write the point file here instead of stdout");
  enumerate->add_option("--cache-dir", enum_cache, "point cache directory");
  enumerate->add_option("--threads", enum_threads, "worker threads")->check(CLI::Range(1u, 1024u));

  // hecke
  int hecke_n = 0;
  std::int64_t hecke_m = 0;
  bool hecke_list = false;
  auto* hecke = app.add_subcommand("hecke", "number of Hermite normal forms of determinant m");
  hecke->add_option("--n", hecke_n, "matrix size")->required();
  hecke->add_option("--m", hecke_m, "determinant")->required();
  hecke->add_flag("--list", hecke_list, "print each form as a row-major CSV row");

  // measure
  FamilyArgs measure_family;
  std::string measure_window;
  MeasureOptions measure_opts;
  auto* measure = app.add_subcommand("measure", "shell estimate of the invariant measure of a window");
  measure_family.add_to(measure);
  measure->add_option("--window", measure_window, "window file")->required();
  measure->add_option("--epsilon", measure_opts.epsilon, "shell thickness");
  measure->add_option("--samples", measure_opts.samples, "sample count");
  measure->add_option("--seed", measure_opts.seed, "seed");
  measure->add_option("--threads", measure_opts.threads, "worker threads")->check(CLI::Range(1u, 1024u));

  // orbits
  FamilyArgs orbit_family;
  std::int64_t orbit_m = 0;
  std::string orbit_window;
  unsigned orbit_threads = 1;
  auto* orbits = app.add_subcommand("orbits", "Smith normal form histogram of the points in a window");
  orbit_family.add_to(orbits);
  orbits->add_option("--m", orbit_m, "level")->required();
  orbits->add_option("--window", orbit_window, "window file")->required();
  orbits->add_option("--threads", orbit_threads, "worker threads")->check(CLI::Range(1u, 1024u));

  // fundamental
  std::int64_t fund_max = 0;
  auto* fundamental = app.add_subcommand("fundamental", "positive fundamental discriminants up to N");
  fundamental->add_option("--max", fund_max, "upper bound")->required();

  // report
  std::string report_config, report_out;
  unsigned report_threads = 0;
  auto* report = app.add_subcommand("report", "run an experiment config and write the JSON report");
  report->add_option("--config", report_config, "config file")->required();
  report->add_option("--out", report_out, "JSON report path (overrides the config's out)");
  report->add_option("--threads", report_threads, "worker threads")->check(CLI::Range(1u, 1024u));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate) {
      const auto family = enum_family.build();
      const Window window = Window::read_file(enum_window);
      EnumerationOptions opts;
      opts.threads = enum_threads;
      std::optional<PointSet> set;
      std::unique_ptr<PointCache> cache;
      if (!enum_cache.empty() && !brute) {
        cache = std::make_unique<PointCache>(enum_cache);
        set = cache->get(family, enum_m, window);
      }
      if (!set) {
        set = brute ? enumerate_bruteforce(family, enum_m, window, opts) : enumerate_points(family, enum_m, window, opts);
        if (cache) cache->put(*set);
      }
      if (set->fallback) std::cerr << "levelset: note: no pruned search for this form; used brute force\n";
      if (enum_out.empty()) {
        print_points(std::cout, *set);
      } else {
        write_file_atomic(enum_out, serialize_point_set(*set));
      }
    } else if (*hecke) {
      if (hecke_list) {
        for (const auto& h : enumerate_hnf(hecke_n, hecke_m)) {
          const auto data = h.data();
          for (std::size_t i = 0; i < data.size(); ++i) std::cout << (i ? "," : "") << to_string(data[i]);
          std::cout << '\n';
        }
      } else {
        std::cout << to_string(hecke_degree(hecke_n, hecke_m)) << '\n';
      }
    } else if (*measure) {
      const auto family = measure_family.build();
      const auto est = estimate_measure(family, Window::read_file(measure_window), measure_opts);
      std::ostringstream row;
      row.precision(17);
      row << est.value << ',';
      if (est.no_hits) row << "undefined";
      else row << est.std_error;
      row << ',' << est.hits << '\n';
      std::cout << row.str();
    } else if (*orbits) {
      const auto family = orbit_family.build();
      EnumerationOptions opts;
      opts.threads = orbit_threads;
      const auto hist = orbit_histogram(family, orbit_m, Window::read_file(orbit_window), opts);
      std::cerr << "levelset: note: " << kOrbitCaveat << '\n';
      for (const auto& [chain, count] : hist.rows) std::cout << chain.to_string() << ';' << count << '\n';
    } else if (*fundamental) {
      for (auto d : fundamental_discriminants_up_to(fund_max)) std::cout << d << '\n';
    } else if (*report) {
      ExperimentConfig cfg = read_config(report_config);
      if (report_threads) cfg.enumeration.threads = cfg.measure.threads = report_threads;
      const std::string out = report_out.empty() ? cfg.out : report_out;
      if (out.empty()) throw ArgumentError("no report path: pass --out or set out in the config");
      const auto result = run_report(cfg);
      write_report(result, out);
      for (const auto& row : result.equidist.rows)
        if (row.error) std::cerr << "levelset: level " << row.m << " failed: " << *row.error << '\n';
      if (result.ratio)
        for (const auto& row : result.ratio->rows)
          if (row.error) std::cerr << "levelset: ratio level " << row.m << " failed: " << *row.error << '\n';
      return result.any_error() ? 3 : 0;
    }
  } catch (const Error& e) {
    std::cerr << "levelset: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "levelset: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
