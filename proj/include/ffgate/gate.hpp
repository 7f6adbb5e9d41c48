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

#ifndef FFGATE_GATE_HPP
#define FFGATE_GATE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "ffgate/gaussian.hpp"
#include "ffgate/opa.hpp"

// The variable squeezing gate with optical feedforward.
//
// Topology: the input mode and a squeezed ancilla mix on a variable beam
// splitter. One output arm runs through a high-gain OPA (so its p quadrature
// becomes a classical copy of the entangled noise), gets attenuated to the
// right feedforward weight, and is folded back onto the other arm through
// a strongly asymmetric displacement beam splitter. A final OPA stage at the
// readout contributes only loss to shot-normalized figures.

namespace ffgate {

/// Ancilla description: an ideal squeezing parameter, or a measured
/// shot-normalized (squeezing, anti-squeezing) pair that may include loss.
class AncillaSpec {
 public:
  static AncillaSpec pure(double r);
  static AncillaSpec measured(double s_minus, double s_plus);

  double s_minus() const { return s_minus_; }
  double s_plus() const { return s_plus_; }
  bool is_pure() const { return pure_; }

  /// The single-mode state with Var(x) = s_minus/2, Var(p) = s_plus/2.
  GaussianState state() const;

 private:
  AncillaSpec(bool pure, double sm, double sp) : pure_(pure), s_minus_(sm), s_plus_(sp) {}
  bool pure_;
  double s_minus_;
  double s_plus_;
};

/// Distributed OPA2 model: coupling loss at the input facet, then the lossy
/// waveguide channel.
struct Opa2Waveguide {
  OpaSpec spec;
  double coupling_loss = 0.0;
};

struct GateConfig {
  double transmission = 1.0;  // variable beam splitter T, in (0, 1]
  AncillaSpec ancilla = AncillaSpec::pure(0.0);
  double l1 = 0.0;             // ancilla-path loss before the splitter
  double l2 = 0.0;             // lumped OPA2 loss, applied before the gain
  double l3 = 0.0;             // OPA3 loss at the readout
  double tap_loss = 0.0;       // phase-lock tap on the feedforward arm
  double lower_arm_loss = 0.0; // mirrors/lenses on the delay arm
  double opa2_gain_db = 0.0;   // p power gain, dB
  double opa3_gain_db = 0.0;   // readout gain (cancels in shot-normalized figures)
  std::optional<Opa2Waveguide> opa2_waveguide;  // replaces l2 + ideal gain when set
  double displacement_reflectance = 0.01;       // weak-port coupling of the displacement BS
  std::optional<double> ff_attenuation;         // power attenuation; nullopt = tune automatically
  double phase_error = 0.0;                     // radians, on the feedforward beam
  bool feedforward_enabled = true;

  void validate() const;

  /// Lumped OPA2 loss for the closed-form predictions: l2 itself, or
  /// coupling + waveguide inefficiency when the distributed model is set.
  double lumped_l2() const;

  /// OPA2 p-quadrature amplitude scale (sqrt of power gain or the waveguide
  /// growth factor).
  double opa2_p_amplitude() const;
};

/// Shot-normalized outcome; the *_pre trio is the same gate with the
/// feedforward arm blocked (vacuum enters the displacement port).
struct GateOutcome {
  double s_plus;
  double s_minus;
  double product;
  double s_plus_pre;
  double s_minus_pre;
  double product_pre;
};

struct IdealVariances {
  double s_minus;  // T + (1-T) e^{-2r}
  double s_plus;   // 1 / T
};

/// Loss-free gate output for transmission T and ancilla squeezing r.
IdealVariances ideal_output_variances(double transmission, double r);

/// Closed-form predictions with lumped losses:
///   S+ = (1-l3) (1/T + ((1-T)/T) l2/(1-l2)) + l3
///   S- = (1-l3) (T + (1-T) S-_anc) + l3
/// and, without feedforward, S+_pre = (1-l3)(T + (1-T) S+_anc) + l3.
GateOutcome analytic_variances(const GateConfig &config);

/// Power attenuation that nulls the ancilla noise coupling at the
/// displacement splitter. Throws infeasible_error (naming the minimum OPA2
/// gain) when the required attenuation exceeds 1.
double tune_ff_gain(const GateConfig &config);

/// Runs the full channel pipeline on a single-mode input state.
GateOutcome run_gate(const GateConfig &config, const GaussianState &input);

/// Same pipeline with an explicit ideal OPA3 gain stage at the readout,
/// shot-normalizing against the equally amplified vacuum. Exists so tests can
/// assert the gain stage cancels rather than assuming it.
GateOutcome run_gate_explicit_opa3(const GateConfig &config, const GaussianState &input);

/// Residual ancilla noise in the output p quadrature, feedforward on (at the
/// given interference phase error) versus off, in dB. More negative is
/// better; a perfect null is clamped at -400 dB.
double cancellation_level(const GateConfig &config, double phase_error);

struct SweepRecord {
  double transmission;
  double s_plus_db;
  double s_minus_db;
  double product;
  double s_plus_pre_db;
  double s_minus_pre_db;
  double product_pre;
  double analytic_s_plus_db;
  double analytic_s_minus_db;
};

/// One record per grid value (ascending), pipeline and closed form side by
/// side, feedforward retuned at each T. Grid points may be evaluated on
/// several threads; the output is identical regardless of thread count.
std::vector<SweepRecord> sweep_transmittance(const GateConfig &config,
                                             std::vector<double> t_grid, unsigned threads = 1);

/// Residual interference phase versus sideband frequency:
/// phi(f) = 2 pi f delta_tau + (1/2) gdd (2 pi f)^2, plus band masks for the
/// averaging window (carrier region excluded).
struct SpectralModel {
  double delta_tau_s = 0.0;
  double gdd_s2 = 0.0;
  double mask_inner_hz = 0.1e12;
  double mask_outer_hz = 1.3e12;

  void validate() const;
  double phase_at(double f_hz) const;
};

struct SpectralRecord {
  double f_hz;
  double s_plus;   // shot-normalized, linear
  double s_minus;  // shot-normalized, linear
  double cancellation_db;
};

struct SpectralSweepResult {
  std::vector<SpectralRecord> records;  // ascending in f
  double band_s_plus;    // arithmetic mean of shot-normalized power over masked bins
  double band_s_minus;   // (both sidebands; the model is even in f)
  double band_product;
  std::size_t band_bins;
};

SpectralSweepResult spectral_sweep(const GateConfig &config, const SpectralModel &model,
                                   std::vector<double> f_grid_hz, unsigned threads = 1);

}  // namespace ffgate

#endif
