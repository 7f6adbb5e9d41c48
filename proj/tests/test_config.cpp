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
#include <cmath>
#include <string>

#include "doctest.h"
#include "ffgate/config.hpp"
#include "ffgate/csvio.hpp"
#include "ffgate/errors.hpp"

using namespace ffgate;

namespace {

const char *kReference = R"(# reference setup
[gate]
T = 0.50
ancilla_squeezing = 3.6 dB
ancilla_antisqueezing = 9.3 dB
l2 = 15 %
l3 = 21 %
displacement_R = 0.01
ff_attenuation = auto
feedforward = on

[opa2]
gain = 28.4 dB

[opa3]
gain = 20.7 dB

[spectral]
delta_tau_fs = 2.78
gdd_fs2 = 0
mask_inner_thz = 0.1
mask_outer_thz = 1.3
)";

}  // namespace

TEST_CASE("reference config parses with the documented conversions") {
  ToolkitConfig config = parse_config_text(kReference);
  CHECK(config.gate.transmission == 0.5);
  CHECK(config.gate.ancilla.s_minus() == doctest::Approx(std::pow(10.0, -0.36)).epsilon(1e-14));
  CHECK(config.gate.ancilla.s_plus() == doctest::Approx(std::pow(10.0, 0.93)).epsilon(1e-14));
  CHECK(!config.gate.ancilla.is_pure());
  CHECK(config.gate.l2 == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(config.gate.l3 == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(config.gate.displacement_reflectance == 0.01);
  CHECK(!config.gate.ff_attenuation.has_value());
  CHECK(config.gate.feedforward_enabled);
  CHECK(config.gate.opa2_gain_db == 28.4);
  CHECK(config.gate.opa3_gain_db == 20.7);
  CHECK(config.spectral.delta_tau_s == doctest::Approx(2.78e-15).epsilon(1e-15));
  CHECK(config.spectral.mask_inner_hz == doctest::Approx(0.1e12));
  CHECK(config.spectral.mask_outer_hz == doctest::Approx(1.3e12));
}

TEST_CASE("defaults are materialized when keys are omitted") {
  ToolkitConfig config = parse_config_text("[gate]\nT = 1.0\n");
  CHECK(config.gate.transmission == 1.0);
  CHECK(config.gate.ancilla.is_pure());
  CHECK(config.gate.ancilla.s_minus() == 1.0);
  CHECK(config.gate.l1 == 0.0);
  CHECK(config.gate.l2 == 0.0);
  CHECK(config.gate.displacement_reflectance == 0.01);
  CHECK(config.gate.phase_error == 0.0);
  CHECK(config.gate.feedforward_enabled);
  CHECK(config.spectral.mask_inner_hz == 0.1e12);
  CHECK(config.spectral.mask_outer_hz == 1.3e12);

  std::string canonical = canonical_config_text(config);
  CHECK(canonical.find("gate.displacement_R = 0.01") != std::string::npos);
  CHECK(canonical.find("gate.ff_attenuation = auto") != std::string::npos);
}

TEST_CASE("alternate value spellings") {
  ToolkitConfig a = parse_config_text("[gate]\nT = 50 %\nancilla_r = 0.7\nphase_error_deg = 90\n");
  CHECK(a.gate.transmission == doctest::Approx(0.5));
  CHECK(a.gate.ancilla.is_pure());
  CHECK(a.gate.ancilla.s_minus() == doctest::Approx(std::exp(-1.4)).epsilon(1e-14));
  CHECK(a.gate.phase_error == doctest::Approx(1.5707963267948966).epsilon(1e-14));

  // Linear gain factor instead of dB.
  ToolkitConfig b = parse_config_text("[gate]\nT = 0.5\n[opa2]\ngain = 100\n");
  CHECK(b.gate.opa2_gain_db == doctest::Approx(20.0).epsilon(1e-14));

  // Pure ancilla from a single squeezing figure.
  ToolkitConfig c = parse_config_text("[gate]\nT = 0.5\nancilla_squeezing = 6.0 dB\n");
  CHECK(c.gate.ancilla.s_minus() == doctest::Approx(std::pow(10.0, -0.6)).epsilon(1e-14));
  CHECK(c.gate.ancilla.s_plus() == doctest::Approx(std::pow(10.0, 0.6)).epsilon(1e-14));

  ToolkitConfig d = parse_config_text("[gate]\nT = 0.5\nff_attenuation = 25 %\n");
  CHECK(d.gate.ff_attenuation.has_value());
  CHECK(*d.gate.ff_attenuation == doctest::Approx(0.25));
}

TEST_CASE("missing required key is named") {
  try {
    parse_config_text("[gate]\nl2 = 0.1\n");
    FAIL("expected config_error");
  } catch (const config_error &e) {
    CHECK(std::string(e.what()).find("gate.T") != std::string::npos);
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_config_text("[gate]\nT = 0.5\nthis is not a key value pair\n");
    FAIL("expected config_error");
  } catch (const config_error &e) {
    CHECK(e.line == 3);
    CHECK(e.column >= 1);
  }

  try {
    parse_config_text("[gate\nT = 0.5\n");
    FAIL("expected config_error");
  } catch (const config_error &e) {
    CHECK(e.line == 1);
  }

  CHECK_THROWS_AS(parse_config_text("T = 0.5\n"), config_error);         // before any section
  CHECK_THROWS_AS(parse_config_text("[nonsense]\nx = 1\n"), config_error);
  CHECK_THROWS_AS(parse_config_text("[gate]\nT = 0.5\nT = 0.6\n"), config_error);
}

TEST_CASE("unknown keys and bad suffixes are rejected") {
  try {
    parse_config_text("[gate]\nT = 0.5\nl9 = 0.1\n");
    FAIL("expected config_error");
  } catch (const config_error &e) {
    CHECK(std::string(e.what()).find("gate.l9") != std::string::npos);
    CHECK(e.line == 3);
  }
  CHECK_THROWS_AS(parse_config_text("[gate]\nT = 0.5\nl2 = 3 dB\n"), config_error);
  CHECK_THROWS_AS(parse_config_text("[gate]\nT = 0.5\n[opa2]\ngain = 15 %\n"), config_error);
  CHECK_THROWS_AS(parse_config_text("[gate]\nT = 0.5 furlongs\n"), config_error);
  CHECK_THROWS_AS(parse_config_text("[gate]\nT = \n"), config_error);
}

TEST_CASE("conflicting keys are rejected") {
  CHECK_THROWS_AS(
      parse_config_text("[gate]\nT = 0.5\nancilla_r = 1.0\nancilla_squeezing = 3 dB\n"),
      config_error);
  CHECK_THROWS_AS(parse_config_text("[gate]\nT = 0.5\nl2 = 0.1\n[opa2]\ngain = 20 "
                                    "dB\neffective_loss = 5 %\n"),
                  config_error);
  CHECK_THROWS_AS(parse_config_text("[gate]\nT = 0.5\n[opa2]\ngain = 20 dB\ncoupling_loss = 5 %\n"),
                  config_error);
  CHECK_THROWS_AS(parse_config_text("[gate]\nT = 0.5\nancilla_antisqueezing = 9 dB\n"),
                  config_error);
}

TEST_CASE("waveguide section reconstructs the distributed model") {
  ToolkitConfig config = parse_config_text(
      "[gate]\nT = 0.5\n[opa2]\ngain = 28.4 dB\ncoupling_loss = 11 %\neffective_loss = 5 %\n");
  REQUIRE(config.gate.opa2_waveguide.has_value());
  CHECK(config.gate.opa2_waveguide->coupling_loss == doctest::Approx(0.11));
  CHECK(opa_efficiency(config.gate.opa2_waveguide->spec) == doctest::Approx(0.95).epsilon(1e-9));
  CHECK(config.gate.lumped_l2() == doctest::Approx(1.0 - 0.89 * 0.95).epsilon(1e-9));
}

TEST_CASE("digest is stable under formatting and key order") {
  ToolkitConfig a = parse_config_text(kReference);
  ToolkitConfig b = parse_config_text(
      "[opa3]\ngain = 20.7 dB\n[opa2]\ngain   =   28.4 dB\n\n# shuffled\n[spectral]\n"
      "mask_outer_thz = 1.3\nmask_inner_thz = 0.1\ndelta_tau_fs = 2.78\ngdd_fs2 = 0\n"
      "[gate]\nfeedforward = on\nff_attenuation = auto\ndisplacement_R = 0.01\nl3 = 21 %\n"
      "l2 = 15 %\nancilla_antisqueezing = 9.3 dB\nancilla_squeezing = 3.6 dB\nT = 0.50\n");
  CHECK(canonical_config_text(a) == canonical_config_text(b));
  CHECK(fnv1a_hex(canonical_config_text(a)) == fnv1a_hex(canonical_config_text(b)));

  ToolkitConfig c = parse_config_text(std::string(kReference) + "\n[gate]\n");
  (void)c;

  ToolkitConfig changed = parse_config_text(
      std::string("[gate]\nT = 0.51\n"));
  CHECK(fnv1a_hex(canonical_config_text(a)) != fnv1a_hex(canonical_config_text(changed)));

  RunManifest manifest = make_manifest("sweep", a);
  CHECK(manifest.command == "sweep");
  CHECK(manifest.config_digest.size() == 16);
  CHECK(manifest.config_digest == fnv1a_hex(manifest.canonical_config));
}

TEST_CASE("csv writer and reader round-trip") {
  std::string text = csv_row({"a", "b"});
  text += csv_row(std::vector<double>{0.1, 1.0 / 3.0});
  text += csv_row(std::vector<double>{-2.5e-101, 691.8309709189363});
  text += "\nsummary,junk\n";  // trailing block is ignored by the reader

  CsvTable table = parse_csv(text);
  REQUIRE(table.header.size() == 2);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.number(0, 0) == 0.1);
  CHECK(table.number(0, 1) == 1.0 / 3.0);
  CHECK(table.number(1, 0) == -2.5e-101);
  CHECK(table.number(1, 1) == 691.8309709189363);

  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("a\nnot_a_number\n").number(0, 0), std::invalid_argument);
}

TEST_CASE("duplicate-section merge still works") {
  ToolkitConfig config =
      parse_config_text("[gate]\nT = 0.5\n[opa2]\ngain = 10 dB\n[gate]\nl2 = 0.1\n");
  CHECK(config.gate.transmission == 0.5);
  CHECK(config.gate.l2 == doctest::Approx(0.1));
}
