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

#ifndef FFGATE_CONFIG_HPP
#define FFGATE_CONFIG_HPP

#include <string>

#include "ffgate/gate.hpp"

// Experiment description files: flat `[section]` / `key = value` text with
// `dB` and `%` suffixes where they make sense. Sections: gate, opa2, opa3,
// spectral. The exact grammar is documented in the README.

namespace ffgate {

struct ToolkitConfig {
  GateConfig gate;
  SpectralModel spectral;
};

/// Parses and resolves a config (defaults materialized, cross-keys checked).
/// Throws config_error with a 1-based line/column on any problem.
ToolkitConfig parse_config_text(const std::string &text);
ToolkitConfig load_config_file(const std::string &path);

/// Deterministic `section.key = value` listing of the fully resolved config,
/// sorted by key; independent of formatting, ordering and comments in the
/// source text.
std::string canonical_config_text(const ToolkitConfig &config);

/// FNV-1a 64-bit, hex.
std::string fnv1a_hex(const std::string &text);

struct RunManifest {
  std::string command;
  std::string version;
  std::string config_digest;  // hash of the canonical config text
  std::string canonical_config;
};

RunManifest make_manifest(const std::string &command, const ToolkitConfig &config);

}  // namespace ffgate

#endif
