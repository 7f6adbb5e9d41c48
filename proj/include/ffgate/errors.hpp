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

#ifndef FFGATE_ERRORS_HPP
#define FFGATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffgate {

/// A requested operating point cannot be realized by any physical setting
/// (e.g. the feedforward coupling would need attenuation above unity).
struct infeasible_error : std::runtime_error {
  explicit infeasible_error(const std::string &what) : std::runtime_error(what) {}
};

/// An internally computed state violated a physicality invariant by more
/// than the working tolerance. Indicates a bug or numerically hostile input.
struct consistency_error : std::runtime_error {
  explicit consistency_error(const std::string &what) : std::runtime_error(what) {}
};

/// Config-file syntax or schema problem, with 1-based source position.
struct config_error : std::runtime_error {
  int line;
  int column;
  config_error(const std::string &what, int line_, int column_)
      : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

/// Measurement pair carries no information about the model parameters.
struct degenerate_error : std::runtime_error {
  explicit degenerate_error(const std::string &what) : std::runtime_error(what) {}
};

/// A frequency mask selected zero bins.
struct band_error : std::runtime_error {
  explicit band_error(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace ffgate

#endif
