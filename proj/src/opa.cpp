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

#include "ffgate/opa.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ffgate/errors.hpp"

namespace ffgate {

namespace {

constexpr double kSeriesSwitch = 1e-6;

// (e^{2dL} - 1) / d, with a second-order series branch across the removable
// d = 0 singularity (switchover at |dL| < 1e-6 keeps both branches within
// ~1e-12 relative of each other).
double expm1_over_rate(double d, double length) {
  const double u = d * length;
  if (std::fabs(u) < kSeriesSwitch) {
    return 2.0 * length * (1.0 + u + (2.0 / 3.0) * u * u);
  }
  return std::expm1(2.0 * u) / d;
}

}  // namespace

void OpaSpec::validate() const {
  if (!(std::isfinite(gain_per_m) && std::isfinite(alpha_per_m) && std::isfinite(length_m))) {
    throw std::invalid_argument("OpaSpec: parameters must be finite");
  }
  if (gain_per_m < 0.0 || alpha_per_m < 0.0) {
    throw std::invalid_argument("OpaSpec: g and alpha must be >= 0");
  }
  if (length_m <= 0.0) {
    throw std::invalid_argument("OpaSpec: length must be > 0");
  }
}

GaussianChannel lossy_opa_channel(const OpaSpec &spec, std::size_t mode, std::size_t num_modes) {
  spec.validate();
  const double g = spec.gain_per_m, a = spec.alpha_per_m, len = spec.length_m;
  if (mode >= num_modes) {
    throw std::invalid_argument("lossy_opa_channel: mode index out of range");
  }

  GaussianChannel ch = identity_channel(num_modes);
  const std::size_t ix = 2 * mode, ip = 2 * mode + 1;
  ch.scale(ix, ix) = std::exp(-(g + a) * len);
  ch.scale(ip, ip) = std::exp((g - a) * len);
  if (a > 0.0) {
    // x side: -expm1 keeps 1 - e^{-u} accurate; g + alpha > 0 whenever a > 0.
    ch.noise(ix, ix) = kVacuumVariance * a * (-std::expm1(-2.0 * (g + a) * len)) / (g + a);
    ch.noise(ip, ip) = kVacuumVariance * a * expm1_over_rate(g - a, len);
  }
  return ch;
}

GaussianChannel opa_slice_channel(const OpaSpec &spec, std::size_t num_slices, std::size_t mode,
                                  std::size_t num_modes) {
  spec.validate();
  if (num_slices == 0) {
    throw std::invalid_argument("opa_slice_channel: need at least one slice");
  }
  if (mode >= num_modes) {
    throw std::invalid_argument("opa_slice_channel: mode index out of range");
  }
  const double dz = spec.length_m / static_cast<double>(num_slices);
  const double g = spec.gain_per_m, a = spec.alpha_per_m;

  GaussianChannel slice = identity_channel(num_modes);
  const std::size_t ix = 2 * mode, ip = 2 * mode + 1;
  const double attenuation = std::exp(-a * dz);
  slice.scale(ix, ix) = std::exp(-g * dz) * attenuation;
  slice.scale(ip, ip) = std::exp(g * dz) * attenuation;
  const double injected = kVacuumVariance * (-std::expm1(-2.0 * a * dz));
  slice.noise(ix, ix) = injected;
  slice.noise(ip, ip) = injected;

  GaussianChannel out = identity_channel(num_modes);
  for (std::size_t n = 0; n < num_slices; ++n) {
    out = compose(slice, out);
  }
  return out;
}

double opa_efficiency(const OpaSpec &spec) {
  spec.validate();
  const double g = spec.gain_per_m, a = spec.alpha_per_m, len = spec.length_m;
  const double growth = std::exp(2.0 * (g - a) * len);
  // eta = d E / (g E - a) rewritten against the removable d = 0 singularity:
  // g E - a = a (E - 1) + d E.
  return growth / (a * expm1_over_rate(g - a, len) + growth);
}

LossAmpDecomposition decompose_loss_then_amp(const OpaSpec &spec) {
  spec.validate();
  const double g = spec.gain_per_m, a = spec.alpha_per_m, len = spec.length_m;
  const double growth = std::exp(2.0 * (g - a) * len);
  const double gain = a * expm1_over_rate(g - a, len) + growth;  // (g E - a)/(g - a)
  return LossAmpDecomposition{growth / gain, gain};
}

OpaSpec spec_from_gain_loss(const OpaGainLoss &gl, double assumed_length_m) {
  if (!(gl.gain_db > 0.0) || !std::isfinite(gl.gain_db)) {
    throw std::invalid_argument("spec_from_gain_loss: gain_db must be positive");
  }
  if (!(gl.effective_loss >= 0.0 && gl.effective_loss < 1.0)) {
    throw std::invalid_argument("spec_from_gain_loss: effective_loss outside [0,1)");
  }
  if (!(assumed_length_m > 0.0)) {
    throw std::invalid_argument("spec_from_gain_loss: assumed length must be > 0");
  }

  // The p power gain fixes g - alpha outright; only alpha is left to solve.
  const double rate_diff = gl.gain_db * std::log(10.0) / (20.0 * assumed_length_m);
  if (gl.effective_loss == 0.0) {
    return OpaSpec{rate_diff, 0.0, assumed_length_m};
  }
  const double eta_target = 1.0 - gl.effective_loss;
  auto eta_at = [&](double alpha) {
    return opa_efficiency(OpaSpec{alpha + rate_diff, alpha, assumed_length_m});
  };

  double lo = 0.0;           // eta_at(0) = 1 > eta_target
  double hi = 1.0 / assumed_length_m;
  int expansions = 0;
  while (eta_at(hi) > eta_target) {
    hi *= 2.0;
    if (++expansions > 200) {
      throw infeasible_error("spec_from_gain_loss: no alpha reproduces the requested loss");
    }
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (eta_at(mid) > eta_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double alpha = 0.5 * (lo + hi);
  OpaSpec spec{alpha + rate_diff, alpha, assumed_length_m};

  const double eta_residual = std::fabs(opa_efficiency(spec) - eta_target) / eta_target;
  if (eta_residual > 1e-9) {
    throw infeasible_error("spec_from_gain_loss: residual " + format_double(eta_residual) +
                           " exceeds tolerance");
  }
  return spec;
}

}  // namespace ffgate
