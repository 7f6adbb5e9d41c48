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

#ifndef FFGATE_OPA_HPP
#define FFGATE_OPA_HPP

#include <cstddef>

#include "ffgate/gaussian.hpp"

// Phase-sensitive amplification in a waveguide with distributed loss.
//
// The medium squeezes (x shrinks by e^{-g z}, p grows by e^{g z}) while an
// extinction coefficient alpha continuously swaps signal for fresh vacuum.
// Integrating the injected vacuum along the guide gives a closed-form
// Gaussian channel; a slice-discretized construction of the same physics is
// kept alongside as a convergence oracle.

namespace ffgate {

struct OpaSpec {
  double gain_per_m;   // parametric gain per unit length g (1/m), >= 0
  double alpha_per_m;  // extinction coefficient (1/m), >= 0
  double length_m;     // waveguide length (m), > 0

  void validate() const;
};

/// Gain/loss summary of a physical module: p-quadrature power gain in dB and
/// the effective propagation loss 1 - eta of the guide.
struct OpaGainLoss {
  double gain_db;
  double effective_loss;  // in [0, 1)
};

/// Closed-form channel of the lossy guide on one mode:
///   x: scale e^{-(g+alpha)L}, vacuum noise  alpha (1 - e^{-2(g+alpha)L}) / (g+alpha)
///   p: scale e^{ (g-alpha)L}, vacuum noise  alpha (e^{ 2(g-alpha)L} - 1) / (g-alpha)
/// (noise entries carry the extra 1/2 of the vacuum variance). The removable
/// g = alpha singularity on the p side is handled by a series branch.
GaussianChannel lossy_opa_channel(const OpaSpec &spec, std::size_t mode, std::size_t num_modes);

/// N-slice discretization: per slice of length L/N, exact squeeze-plus-loss
/// with an independent vacuum, composed N times. Converges to
/// lossy_opa_channel at O(1/N) in every matrix entry.
GaussianChannel opa_slice_channel(const OpaSpec &spec, std::size_t num_slices, std::size_t mode,
                                  std::size_t num_modes);

/// Equivalent input-side transmittance of the guide seen by the amplified
/// quadrature: eta = (g-alpha) e^{2(g-alpha)L} / (g e^{2(g-alpha)L} - alpha),
/// with the g -> alpha limit 1/(1+2 alpha L).
double opa_efficiency(const OpaSpec &spec);

struct LossAmpDecomposition {
  double eta;   // equals opa_efficiency(spec)
  double gain;  // ideal p power gain G, with eta * G = e^{2(g-alpha)L}
};

/// Factorizes the p row of the lossy channel as pure loss followed by ideal
/// amplification. The x row is intentionally not reproduced (the channel is
/// phase sensitive).
LossAmpDecomposition decompose_loss_then_amp(const OpaSpec &spec);

/// Inverse problem: find (g, alpha) at a fixed assumed length whose channel
/// has the given p power gain and efficiency 1 - effective_loss. Solved by
/// bisection on alpha with g eliminated through the gain constraint. Only the
/// products gL and alphaL are observable, hence the explicit length gauge.
OpaSpec spec_from_gain_loss(const OpaGainLoss &gl, double assumed_length_m);

}  // namespace ffgate

#endif
