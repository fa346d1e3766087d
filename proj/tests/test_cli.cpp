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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(LEVELSET_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

struct Workdir {
  fs::path path;
  Workdir() {
    path = fs::temp_directory_path() / ("levelset-cli-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~Workdir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("hecke") {
  auto r = run("hecke --n 2 --m 6");
  CHECK(r.status == 0);
  CHECK(r.out == "12\n");
  r = run("hecke --n 2 --m 2 --list");
  CHECK(r.out == "1,0,0,2\n1,1,0,2\n2,0,0,1\n");
  CHECK(run("hecke --n 3 --m 2").out == "7\n");
}

TEST_CASE("fundamental") {
  CHECK(run("fundamental --max 30").out == "1\n5\n8\n12\n13\n17\n21\n24\n28\n29\n");
}

TEST_CASE("enumerate") {
  Workdir dir;
  const auto window = dir.write("w.txt", "-1.5 1.5\n-1.5 1.5\n-1.5 1.5\n-1.5 1.5\n");
  auto r = run("enumerate --family det --n 2 --m 1 --window " + window);
  CHECK(r.status == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0].rfind("# family=det(n=2) m=1 window-hash=", 0) == 0);
  const auto brute = run("enumerate --family det --n 2 --m 1 --brute-force --threads 3 --window " + window);
  CHECK(brute.out == r.out);
  const auto out = (dir.path / "points.csv").string();
  CHECK(run("enumerate --family det --n 2 --m 1 --window " + window + " --out " + out).status == 0);
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == r.out);
  const auto cache = (dir.path / "cache").string();
  CHECK(run("enumerate --family det --n 2 --m 1 --window " + window + " --cache-dir " + cache).out == r.out);
  CHECK(run("enumerate --family det --n 2 --m 1 --window " + window + " --cache-dir " + cache).out == r.out);

  const auto q = run("enumerate --family quad --signature 2,2 --m 1 --window " + window);
  CHECK(q.status == 0);
  const auto coeffs = dir.write("q.txt", "1 0 0 0\n1 0 0\n-1 0\n-1\n");
  CHECK(run("enumerate --family quad --signature 2,2 --qcoeffs " + coeffs + " --m 1 --window " + window).out == q.out);

  CHECK(run("enumerate --family det --n 3 --m 1 --window " + window).status == 1);
  CHECK(run("enumerate --family cube --n 2 --m 1 --window " + window).status != 0);
  CHECK(run("enumerate --family det --n 2 --m 0 --window " + window).status == 1);
}

TEST_CASE("measure") {
  Workdir dir;
  const auto window = dir.write("w.txt", "-1 1\n-1 1\n-1 1\n-1 1\n");
  const auto r = run("measure --family det --n 2 --window " + window + " --epsilon 0.01 --samples 20000 --seed 3");
  CHECK(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(std::count(rows[0].begin(), rows[0].end(), ',') == 2);
  CHECK(run("measure --family det --n 2 --window " + window + " --epsilon 0.01 --samples 20000 --seed 3 --threads 4").out ==
        r.out);
  const auto none = dir.write("n.txt", "-0.1 0.1\n-0.1 0.1\n1 2\n1 2\n");
  const auto u = run("measure --family quad --signature 2,2 --window " + none + " --samples 20000");
  CHECK(u.out.find("undefined") != std::string::npos);
}

TEST_CASE("orbits") {
  Workdir dir;
  const auto window = dir.write("w.txt", "-2 2\n-2 2\n-2 2\n-2 2\n");
  const auto r = run("orbits --family det --n 2 --m 4 --window " + window);
  CHECK(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].rfind("1,4;", 0) == 0);
  CHECK(rows[1].rfind("2,2;", 0) == 0);
  CHECK(run("orbits --family pff --n 2 --m 4 --window " + window).status == 1);
}

TEST_CASE("report") {
  Workdir dir;
  const std::string base =
      "family = det\nn = 2\nlevel_range = 10:100:10\nwindow_radius = 1.5\ngrid_axes = 0,1\ngrid_splits = 2,2\n"
      "samples = 20000\nomega_trend = true\n";
  const auto cfg = dir.write("exp.cfg", base);
  const auto out1 = (dir.path / "a" / "report.json").string();
  const auto out2 = (dir.path / "b" / "report.json").string();
  CHECK(run("report --config " + cfg + " --out " + out1).status == 0);
  CHECK(run("report --config " + cfg + " --out " + out2 + " --threads 4").status == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  CHECK(slurp(out1) == slurp(out2));
  CHECK(fs::exists(dir.path / "a" / "levels.csv"));
  CHECK(fs::exists(dir.path / "a" / "cells.csv"));

  const auto failing = dir.write("fail.cfg", base + "enum_budget = 500\n");
  CHECK(run("report --config " + failing + " --out " + (dir.path / "c" / "r.json").string()).status == 3);
  CHECK(fs::exists(dir.path / "c" / "r.json"));
  const auto bad = dir.write("bad.cfg", base + "bogus = 1\n");
  CHECK(run("report --config " + bad + " --out " + out1).status == 1);
}
