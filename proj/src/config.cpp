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

#include "ffgate/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "ffgate/errors.hpp"
#include "ffgate/version.hpp"

namespace ffgate {

namespace {

struct Entry {
  std::string value;
  int line;
  int column;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

struct RawConfig {
  std::map<std::string, Section> sections;
  int line_count = 0;
};

std::string trim(const std::string &s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_section(const std::string &name) {
  return name == "gate" || name == "opa2" || name == "opa3" || name == "spectral";
}

RawConfig tokenize(const std::string &text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    std::string stripped = trim(line);
    if (stripped.empty()) {
      continue;
    }
    int col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    if (stripped.front() == '[') {
      if (stripped.back() != ']') {
        throw config_error("unterminated section header", lineno, col);
      }
      section = trim(stripped.substr(1, stripped.size() - 2));
      if (!valid_section(section)) {
        throw config_error("unknown section [" + section + "]", lineno, col);
      }
      continue;
    }
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw config_error("expected `key = value`", lineno, col);
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw config_error("empty key", lineno, col);
    }
    if (value.empty()) {
      throw config_error("empty value for key " + key, lineno, col);
    }
    if (section.empty()) {
      throw config_error("key " + key + " appears before any [section]", lineno, col);
    }
    auto [it, inserted] = raw.sections[section].emplace(key, Entry{value, lineno, col});
    if (!inserted) {
      throw config_error("duplicate key " + section + "." + key, lineno, col);
    }
  }
  raw.line_count = lineno;
  return raw;
}

enum class Suffix { none, db, percent };

struct Quantity {
  double value;
  Suffix suffix;
};

Quantity parse_quantity(const Entry &e, const std::string &key) {
  const char *begin = e.value.c_str();
  char *end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin) {
    throw config_error("key " + key + ": expected a number, got `" + e.value + "`", e.line,
                       e.column);
  }
  std::string rest = trim(std::string(end));
  Suffix suffix = Suffix::none;
  if (rest == "dB" || rest == "db") {
    suffix = Suffix::db;
  } else if (rest == "%") {
    suffix = Suffix::percent;
  } else if (!rest.empty()) {
    throw config_error("key " + key + ": unrecognized suffix `" + rest + "`", e.line, e.column);
  }
  return Quantity{v, suffix};
}

class SectionReader {
 public:
  SectionReader(RawConfig &raw, std::string name) : name_(std::move(name)) {
    auto it = raw.sections.find(name_);
    if (it != raw.sections.end()) {
      section_ = &it->second;
    }
  }

  bool has(const std::string &key) const { return section_ && section_->count(key); }

  const Entry &entry(const std::string &key) {
    Entry &e = section_->at(key);
    e.used = true;
    return e;
  }

  std::string full_key(const std::string &key) const { return name_ + "." + key; }

  // fraction in [0,1): plain value or percent.
  double loss(const std::string &key, double fallback) {
    if (!has(key)) {
      return fallback;
    }
    const Entry &e = entry(key);
    Quantity q = parse_quantity(e, full_key(key));
    if (q.suffix == Suffix::db) {
      throw config_error("key " + full_key(key) + ": losses take a fraction or %, not dB", e.line,
                         e.column);
    }
    return q.suffix == Suffix::percent ? q.value / 100.0 : q.value;
  }

  double fraction(const std::string &key, double fallback) { return loss(key, fallback); }

  // Power gain in dB: `x dB` directly, plain value treated as linear gain.
  double gain_db(const std::string &key, double fallback) {
    if (!has(key)) {
      return fallback;
    }
    const Entry &e = entry(key);
    Quantity q = parse_quantity(e, full_key(key));
    if (q.suffix == Suffix::percent) {
      throw config_error("key " + full_key(key) + ": gains take dB or a linear factor, not %",
                         e.line, e.column);
    }
    if (q.suffix == Suffix::db) {
      return q.value;
    }
    if (!(q.value > 0.0)) {
      throw config_error("key " + full_key(key) + ": linear gain must be positive", e.line,
                         e.column);
    }
    return to_db(q.value);
  }

  double plain(const std::string &key, double fallback) {
    if (!has(key)) {
      return fallback;
    }
    const Entry &e = entry(key);
    Quantity q = parse_quantity(e, full_key(key));
    if (q.suffix != Suffix::none) {
      throw config_error("key " + full_key(key) + ": takes a plain number", e.line, e.column);
    }
    return q.value;
  }

 private:
  std::string name_;
  Section *section_ = nullptr;
};

void check_all_used(const RawConfig &raw) {
  for (const auto &[section, entries] : raw.sections) {
    for (const auto &[key, e] : entries) {
      if (!e.used) {
        throw config_error("unknown key " + section + "." + key, e.line, e.column);
      }
    }
  }
}

}  // namespace

ToolkitConfig parse_config_text(const std::string &text) {
  RawConfig raw = tokenize(text);
  ToolkitConfig out;

  SectionReader gate(raw, "gate");
  SectionReader opa2(raw, "opa2");
  SectionReader opa3(raw, "opa3");
  SectionReader spectral(raw, "spectral");

  if (!gate.has("T")) {
    throw config_error("missing required key gate.T", raw.line_count + 1, 1);
  }
  out.gate.transmission = gate.fraction("T", 0.0);

  const bool has_r = gate.has("ancilla_r");
  const bool has_sq = gate.has("ancilla_squeezing");
  const bool has_anti = gate.has("ancilla_antisqueezing");
  if (has_r && (has_sq || has_anti)) {
    const Entry &e = gate.entry("ancilla_r");
    throw config_error("gate.ancilla_r conflicts with the measured ancilla pair", e.line,
                       e.column);
  }
  if (has_r) {
    out.gate.ancilla = AncillaSpec::pure(gate.plain("ancilla_r", 0.0));
  } else if (has_sq) {
    // dB entries follow the usual positive-magnitude quoting.
    const Entry &se = gate.entry("ancilla_squeezing");
    Quantity sq = parse_quantity(se, "gate.ancilla_squeezing");
    double s_minus = sq.suffix == Suffix::db ? db_to_ratio(-sq.value) : sq.value;
    double s_plus = 1.0 / s_minus;  // pure unless the anti-squeezing is also given
    if (has_anti) {
      const Entry &ae = gate.entry("ancilla_antisqueezing");
      Quantity anti = parse_quantity(ae, "gate.ancilla_antisqueezing");
      s_plus = anti.suffix == Suffix::db ? db_to_ratio(anti.value) : anti.value;
    }
    out.gate.ancilla = AncillaSpec::measured(s_minus, s_plus);
  } else if (has_anti) {
    const Entry &ae = gate.entry("ancilla_antisqueezing");
    throw config_error("gate.ancilla_antisqueezing needs gate.ancilla_squeezing", ae.line,
                       ae.column);
  }

  out.gate.l1 = gate.loss("l1", 0.0);
  out.gate.l2 = gate.loss("l2", 0.0);
  out.gate.l3 = gate.loss("l3", 0.0);
  out.gate.tap_loss = gate.loss("tap_loss", 0.0);
  out.gate.lower_arm_loss = gate.loss("lower_arm_loss", 0.0);
  out.gate.displacement_reflectance = gate.fraction("displacement_R", 0.01);
  out.gate.phase_error = gate.plain("phase_error_deg", 0.0) * std::numbers::pi / 180.0;

  if (gate.has("ff_attenuation")) {
    const Entry &e = gate.entry("ff_attenuation");
    if (e.value == "auto") {
      out.gate.ff_attenuation.reset();
    } else {
      Quantity q = parse_quantity(e, "gate.ff_attenuation");
      if (q.suffix == Suffix::db) {
        throw config_error("gate.ff_attenuation takes a fraction, % or `auto`", e.line, e.column);
      }
      out.gate.ff_attenuation = q.suffix == Suffix::percent ? q.value / 100.0 : q.value;
    }
  }
  if (gate.has("feedforward")) {
    const Entry &e = gate.entry("feedforward");
    if (e.value == "on" || e.value == "true") {
      out.gate.feedforward_enabled = true;
    } else if (e.value == "off" || e.value == "false") {
      out.gate.feedforward_enabled = false;
    } else {
      throw config_error("gate.feedforward must be on/off", e.line, e.column);
    }
  }

  out.gate.opa2_gain_db = opa2.gain_db("gain", 0.0);
  if (opa2.has("effective_loss")) {
    if (gate.has("l2")) {
      const Entry &e = opa2.entry("effective_loss");
      throw config_error("opa2.effective_loss conflicts with gate.l2 (pick lumped or waveguide)",
                         e.line, e.column);
    }
    Opa2Waveguide wg;
    wg.coupling_loss = opa2.loss("coupling_loss", 0.0);
    const double eff = opa2.loss("effective_loss", 0.0);
    const double length = opa2.plain("waveguide_length", 1.0);
    wg.spec = spec_from_gain_loss(OpaGainLoss{out.gate.opa2_gain_db, eff}, length);
    out.gate.opa2_waveguide = wg;
  } else if (opa2.has("coupling_loss")) {
    const Entry &e = opa2.entry("coupling_loss");
    throw config_error("opa2.coupling_loss needs opa2.effective_loss", e.line, e.column);
  }
  out.gate.opa3_gain_db = opa3.gain_db("gain", 0.0);

  out.spectral.delta_tau_s = spectral.plain("delta_tau_fs", 0.0) * 1e-15;
  out.spectral.gdd_s2 = spectral.plain("gdd_fs2", 0.0) * 1e-30;
  out.spectral.mask_inner_hz = spectral.plain("mask_inner_thz", 0.1) * 1e12;
  out.spectral.mask_outer_hz = spectral.plain("mask_outer_thz", 1.3) * 1e12;

  check_all_used(raw);

  try {
    out.gate.validate();
    out.spectral.validate();
  } catch (const std::invalid_argument &err) {
    throw config_error(err.what(), raw.line_count + 1, 1);
  }
  return out;
}

ToolkitConfig load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open config file " + path, 0, 0);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string canonical_config_text(const ToolkitConfig &config) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto put = [&](const std::string &key, const std::string &value) { kv.emplace_back(key, value); };
  auto putd = [&](const std::string &key, double value) { put(key, format_double(value)); };

  const GateConfig &g = config.gate;
  putd("gate.T", g.transmission);
  putd("gate.ancilla_s_minus", g.ancilla.s_minus());
  putd("gate.ancilla_s_plus", g.ancilla.s_plus());
  put("gate.ancilla_kind", g.ancilla.is_pure() ? "pure" : "measured");
  putd("gate.l1", g.l1);
  putd("gate.l2", g.l2);
  putd("gate.l3", g.l3);
  putd("gate.tap_loss", g.tap_loss);
  putd("gate.lower_arm_loss", g.lower_arm_loss);
  putd("gate.displacement_R", g.displacement_reflectance);
  put("gate.ff_attenuation", g.ff_attenuation ? format_double(*g.ff_attenuation) : "auto");
  putd("gate.phase_error_rad", g.phase_error);
  put("gate.feedforward", g.feedforward_enabled ? "on" : "off");
  putd("opa2.gain_db", g.opa2_gain_db);
  if (g.opa2_waveguide) {
    putd("opa2.coupling_loss", g.opa2_waveguide->coupling_loss);
    putd("opa2.g_per_m", g.opa2_waveguide->spec.gain_per_m);
    putd("opa2.alpha_per_m", g.opa2_waveguide->spec.alpha_per_m);
    putd("opa2.length_m", g.opa2_waveguide->spec.length_m);
  }
  putd("opa3.gain_db", g.opa3_gain_db);
  putd("spectral.delta_tau_s", config.spectral.delta_tau_s);
  putd("spectral.gdd_s2", config.spectral.gdd_s2);
  putd("spectral.mask_inner_hz", config.spectral.mask_inner_hz);
  putd("spectral.mask_outer_hz", config.spectral.mask_outer_hz);

  std::sort(kv.begin(), kv.end());
  std::string out;
  for (const auto &[key, value] : kv) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

std::string fnv1a_hex(const std::string &text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunManifest make_manifest(const std::string &command, const ToolkitConfig &config) {
  RunManifest m;
  m.command = command;
  m.version = kVersion;
  m.canonical_config = canonical_config_text(config);
  m.config_digest = fnv1a_hex(m.canonical_config);
  return m;
}

}  // namespace ffgate
