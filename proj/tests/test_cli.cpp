// Copyright 2026 The ffgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "ffgate/csvio.hpp"
#include "json.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

std::string binary_path() {
  const char *bin = std::getenv("FFGATE_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

std::string config_dir() {
  const char *dir = std::getenv("FFGATE_CONFIG_DIR");
  REQUIRE(dir != nullptr);
  return dir;
}

CliResult run_cli(const std::string &args, bool merge_stderr = false) {
  std::string cmd = binary_path() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
    out.append(buf, n);
  }
  int status = pclose(pipe);
  return CliResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_temp_config(const std::string &name, const std::string &text) {
  std::string path = "/tmp/ffgate_cli_" + name + ".cfg";
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
  return path;
}

double grab_value(const std::string &csv, const std::string &quantity) {
  std::size_t pos = csv.find("\n" + quantity + ",");
  REQUIRE(pos != std::string::npos);
  pos += quantity.size() + 2;
  return std::strtod(csv.c_str() + pos, nullptr);
}

}  // namespace

TEST_CASE("infer-loss reproduces the calibration numbers") {
  CliResult res = run_cli("infer-loss 9.3 3.6 --budget 0.96,0.93,0.92,0.99,0.79");
  CHECK(res.exit_code == 0);
  CHECK(grab_value(res.out, "loss") == doctest::Approx(0.3908164726751598).epsilon(1e-12));
  CHECK(grab_value(res.out, "r") == doctest::Approx(1.2950176484503442).epsilon(1e-12));
  CHECK(grab_value(res.out, "forward_residual") <= 1e-12);
  CHECK(grab_value(res.out, "budget_loss") == doctest::Approx(0.3576018304).epsilon(1e-10));

  CliResult pure = run_cli("infer-loss 6.0205999132796239 6.0205999132796239");
  CHECK(pure.exit_code == 0);
  CHECK(std::fabs(grab_value(pure.out, "loss")) < 1e-9);
}

TEST_CASE("degenerate inference exits 5") {
  CliResult res = run_cli("infer-loss 0 0");
  CHECK(res.exit_code == 5);
}

TEST_CASE("config parse failures exit 2 and name the problem") {
  std::string path = write_temp_config("missing_t", "[gate]\nl2 = 0.1\n");
  CliResult res = run_cli("simulate " + path, /*merge_stderr=*/true);
  CHECK(res.exit_code == 2);
  CHECK(res.out.find("gate.T") != std::string::npos);

  CliResult gone = run_cli("simulate /tmp/ffgate_does_not_exist.cfg");
  CHECK(gone.exit_code == 2);

  CliResult badflag = run_cli("simulate");
  CHECK(badflag.exit_code == 2);
}

TEST_CASE("infeasible feedforward exits 3 with the minimum gain") {
  std::string path = write_temp_config(
      "weak_gain", "[gate]\nT = 0.5\nancilla_r = 0.5\nl2 = 0.15\n[opa2]\ngain = 10 dB\n");
  CliResult res = run_cli("simulate " + path, /*merge_stderr=*/true);
  CHECK(res.exit_code == 3);
  CHECK(res.out.find("dB") != std::string::npos);
}

TEST_CASE("empty spectral band exits 4") {
  std::string path =
      write_temp_config("band", "[gate]\nT = 0.5\nancilla_r = 0.5\n[opa2]\ngain = 28.4 dB\n");
  CliResult res = run_cli("spectrum " + path + " --fmax 0.05 --bins 6");
  CHECK(res.exit_code == 4);
}

TEST_CASE("identity configuration yields flat zero-dB rows") {
  std::string path = write_temp_config("identity", "[gate]\nT = 1.0\n[opa2]\ngain = 28.4 dB\n");
  CliResult res = run_cli("simulate " + path);
  CHECK(res.exit_code == 0);
  ffgate::CsvTable table = ffgate::parse_csv(res.out);
  REQUIRE(table.header.size() == 4);
  REQUIRE(table.rows.size() >= 4);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(std::fabs(table.number(i, 1)) < 1e-9);  // pipeline_dB
    CHECK(std::fabs(table.number(i, 2)) < 1e-9);  // analytic_dB
    CHECK(std::fabs(table.number(i, 3)) < 1e-9);  // delta_dB
  }
}

TEST_CASE("sweep CSV contract") {
  std::string config = config_dir() + "/reference.cfg";
  CliResult res = run_cli("sweep " + config + " --t-grid 0.62,0.30,0.50,0.40");
  CHECK(res.exit_code == 0);

  ffgate::CsvTable table = ffgate::parse_csv(res.out);
  const std::vector<std::string> expected_header = {
      "T",           "S_plus_dB",      "S_minus_dB",      "product",
      "S_plus_pre_dB", "S_minus_pre_dB", "product_pre",
      "analytic_S_plus_dB", "analytic_S_minus_dB"};
  CHECK(table.header == expected_header);
  REQUIRE(table.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    if (i > 0) {
      CHECK(table.number(i, 0) > table.number(i - 1, 0));  // sorted by T
    }
    CHECK(table.number(i, 3) < table.number(i, 6));  // product < product_pre
  }
}

TEST_CASE("sweep output is byte-identical across runs and thread counts") {
  std::string config = config_dir() + "/reference.cfg";
  CliResult first = run_cli("sweep " + config);
  CliResult second = run_cli("sweep " + config);
  CliResult threaded = run_cli("sweep " + config + " --threads 4");
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out == threaded.out);
}

TEST_CASE("spectrum summary is recomputable from its rows") {
  std::string config = config_dir() + "/reference.cfg";
  CliResult res = run_cli("spectrum " + config + " --fmax 1.5 --bins 31");
  CHECK(res.exit_code == 0);

  ffgate::CsvTable table = ffgate::parse_csv(res.out);
  REQUIRE(table.header.size() == 4);
  double sum_plus = 0.0, sum_minus = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double f_hz = table.number(i, 0) * 1e12;
    if (f_hz >= 0.1e12 && f_hz <= 1.3e12) {
      sum_plus += std::pow(10.0, table.number(i, 1) / 10.0);
      sum_minus += std::pow(10.0, table.number(i, 2) / 10.0);
      ++bins;
    }
  }
  REQUIRE(bins > 0);
  const double band_plus_db = grab_value(res.out, "band_average");
  CHECK(band_plus_db == doctest::Approx(10.0 * std::log10(sum_plus / bins)).epsilon(1e-9));

  // Cancellation worsens toward higher sidebands under pure group delay.
  REQUIRE(table.rows.size() >= 3);
  CHECK(table.number(table.rows.size() - 1, 3) > table.number(1, 3));
}

TEST_CASE("opa-check reports the waveguide diagnostics") {
  CliResult res = run_cli("opa-check --g 2 --alpha 0.5 --L 1 --slices 10000");
  CHECK(res.exit_code == 0);
  CHECK(grab_value(res.out, "max_rel_deviation") <= 1e-3);
  CHECK(grab_value(res.out, "efficiency") == doctest::Approx(0.7594527312633929).epsilon(1e-9));
  CHECK(grab_value(res.out, "p_row_reconstruction_error") <= 1e-12);

  CliResult lossless = run_cli("opa-check --g 1 --alpha 0 --L 1");
  CHECK(grab_value(lossless.out, "efficiency") == 1.0);

  CliResult dark = run_cli("opa-check --g 0 --alpha 0.5 --L 1");
  CHECK(grab_value(dark.out, "efficiency") ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  CliResult bad = run_cli("opa-check --g -1 --alpha 0.5 --L 1");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("json mirrors the CSV columns") {
  std::string config = config_dir() + "/reference.cfg";
  CliResult res = run_cli("sweep " + config + " --json");
  CHECK(res.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(res.out);
  CHECK(doc["manifest"]["config_digest"].get<std::string>().size() == 16);
  CHECK(doc["columns"].size() == 9);
  CHECK(doc["rows"].size() == 4);
  CHECK(doc["rows"][0].size() == 9);

  CliResult infer = run_cli("infer-loss 9.3 3.6 --json");
  nlohmann::json inf = nlohmann::json::parse(infer.out);
  CHECK(inf["values"]["loss"].get<double>() == doctest::Approx(0.3908164726751598));
}

TEST_CASE("version flag") {
  CliResult res = run_cli("--version");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("ffgate") != std::string::npos);
}

TEST_CASE("waveguide config runs end to end") {
  std::string config = config_dir() + "/reference_waveguide.cfg";
  CliResult res = run_cli("simulate " + config);
  CHECK(res.exit_code == 0);
  ffgate::CsvTable table = ffgate::parse_csv(res.out);
  CHECK(table.rows.size() >= 4);
}
