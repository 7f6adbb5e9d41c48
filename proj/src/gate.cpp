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

#include "ffgate/gate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "ffgate/errors.hpp"

namespace ffgate {

namespace {

constexpr std::size_t kModeIn = 0;   // feedforward (amplified) arm after the splitter
constexpr std::size_t kModeOut = 1;  // delay arm; carries the gate output
constexpr double kLevelFloorDb = -400.0;

struct GateChannels {
  GaussianChannel on;   // feedforward arm live
  GaussianChannel off;  // feedforward arm blocked (vacuum at the weak port)
  double attenuation;
};

double resolve_attenuation(const GateConfig &config) {
  if (!config.feedforward_enabled) {
    return 0.0;
  }
  if (config.ff_attenuation) {
    return *config.ff_attenuation;
  }
  return tune_ff_gain(config);
}

GateChannels build_gate_channels(const GateConfig &config, double phase) {
  config.validate();
  const double attenuation = resolve_attenuation(config);
  const std::size_t M = 2;

  GaussianChannel common = identity_channel(M);
  if (config.l1 > 0.0) {
    common = compose(loss_channel(1.0 - config.l1, kModeOut, M), common);
  }
  common = compose(beam_splitter_channel(config.transmission, kModeIn, kModeOut, M), common);

  // Feedforward arm.
  GaussianChannel on = common;
  if (config.tap_loss > 0.0) {
    on = compose(loss_channel(1.0 - config.tap_loss, kModeIn, M), on);
  }
  if (config.opa2_waveguide) {
    const Opa2Waveguide &wg = *config.opa2_waveguide;
    if (wg.coupling_loss > 0.0) {
      on = compose(loss_channel(1.0 - wg.coupling_loss, kModeIn, M), on);
    }
    on = compose(lossy_opa_channel(wg.spec, kModeIn, M), on);
  } else {
    if (config.l2 > 0.0) {
      on = compose(loss_channel(1.0 - config.l2, kModeIn, M), on);
    }
    on = compose(ideal_opa_channel(db_to_ratio(config.opa2_gain_db), kModeIn, M), on);
  }
  on = compose(loss_channel(attenuation, kModeIn, M), on);
  if (phase != 0.0) {
    on = compose(phase_rotation_channel(phase, kModeIn, M), on);
  }

  GaussianChannel off = compose(loss_channel(0.0, kModeIn, M), common);

  auto finish = [&](GaussianChannel ch) {
    if (config.lower_arm_loss > 0.0) {
      ch = compose(loss_channel(1.0 - config.lower_arm_loss, kModeOut, M), ch);
    }
    ch = compose(
        beam_splitter_channel(config.displacement_reflectance, kModeIn, kModeOut, M), ch);
    if (config.l3 > 0.0) {
      ch = compose(loss_channel(1.0 - config.l3, kModeOut, M), ch);
    }
    return ch;
  };

  return GateChannels{finish(std::move(on)), finish(std::move(off)), attenuation};
}

GaussianState prepared_state(const GateConfig &config, const GaussianState &input) {
  if (input.num_modes != 1) {
    throw std::invalid_argument("run_gate: input state must be single-mode");
  }
  return tensor(input, config.ancilla.state());
}

struct QuadPair {
  double s_minus;
  double s_plus;
};

QuadPair readout(const GaussianState &state) {
  return QuadPair{shot_normalized(variance(state, {kModeOut, QuadAxis::X})),
                  shot_normalized(variance(state, {kModeOut, QuadAxis::P}))};
}

}  // namespace

AncillaSpec AncillaSpec::pure(double r) {
  if (!std::isfinite(r)) {
    throw std::invalid_argument("AncillaSpec: r must be finite");
  }
  return AncillaSpec(true, std::exp(-2.0 * r), std::exp(2.0 * r));
}

AncillaSpec AncillaSpec::measured(double s_minus, double s_plus) {
  if (!(s_minus > 0.0) || !(s_plus > 0.0)) {
    throw std::invalid_argument("AncillaSpec: measured pair must be positive");
  }
  if (s_minus * s_plus < 1.0 - 1e-9) {
    throw std::invalid_argument("AncillaSpec: pair violates the uncertainty bound");
  }
  return AncillaSpec(false, s_minus, s_plus);
}

GaussianState AncillaSpec::state() const {
  Mat cov(2, 2);
  cov(0, 0) = kVacuumVariance * s_minus_;
  cov(1, 1) = kVacuumVariance * s_plus_;
  return GaussianState(1, Vec(2, 0.0), std::move(cov));
}

void GateConfig::validate() const {
  if (!(transmission > 0.0 && transmission <= 1.0)) {
    throw std::invalid_argument("GateConfig: T must be in (0,1]");
  }
  for (double l : {l1, l2, l3, tap_loss, lower_arm_loss}) {
    if (!(l >= 0.0 && l < 1.0)) {
      throw std::invalid_argument("GateConfig: losses must be in [0,1)");
    }
  }
  if (!(displacement_reflectance > 0.0 && displacement_reflectance < 1.0)) {
    throw std::invalid_argument("GateConfig: displacement reflectance must be in (0,1)");
  }
  if (ff_attenuation && !(*ff_attenuation >= 0.0 && *ff_attenuation <= 1.0)) {
    throw std::invalid_argument("GateConfig: attenuation must be in [0,1]");
  }
  if (!std::isfinite(opa2_gain_db) || !std::isfinite(opa3_gain_db) || !std::isfinite(phase_error)) {
    throw std::invalid_argument("GateConfig: non-finite parameter");
  }
  if (opa2_waveguide) {
    opa2_waveguide->spec.validate();
    if (!(opa2_waveguide->coupling_loss >= 0.0 && opa2_waveguide->coupling_loss < 1.0)) {
      throw std::invalid_argument("GateConfig: coupling loss must be in [0,1)");
    }
  }
}

double GateConfig::lumped_l2() const {
  if (!opa2_waveguide) {
    return l2;
  }
  const double guide_eta = opa_efficiency(opa2_waveguide->spec);
  return 1.0 - (1.0 - opa2_waveguide->coupling_loss) * guide_eta;
}

double GateConfig::opa2_p_amplitude() const {
  if (opa2_waveguide) {
    const OpaSpec &s = opa2_waveguide->spec;
    return std::exp((s.gain_per_m - s.alpha_per_m) * s.length_m);
  }
  return std::sqrt(db_to_ratio(opa2_gain_db));
}

IdealVariances ideal_output_variances(double transmission, double r) {
  if (!(transmission > 0.0 && transmission <= 1.0)) {
    throw std::invalid_argument("ideal_output_variances: T must be in (0,1]");
  }
  if (!std::isfinite(r)) {
    throw std::invalid_argument("ideal_output_variances: r must be finite");
  }
  return IdealVariances{transmission + (1.0 - transmission) * std::exp(-2.0 * r),
                        1.0 / transmission};
}

GateOutcome analytic_variances(const GateConfig &config) {
  config.validate();
  const double T = config.transmission;
  const double l2 = config.lumped_l2();
  const double l3 = config.l3;
  const double sm_anc = config.ancilla.s_minus();
  const double sp_anc = config.ancilla.s_plus();

  const double s_plus = (1.0 - l3) * (1.0 / T + ((1.0 - T) / T) * l2 / (1.0 - l2)) + l3;
  const double s_minus = (1.0 - l3) * (T + (1.0 - T) * sm_anc) + l3;
  const double s_plus_pre = (1.0 - l3) * (T + (1.0 - T) * sp_anc) + l3;

  return GateOutcome{s_plus,      s_minus, s_plus * s_minus,
                     s_plus_pre,  s_minus, s_plus_pre * s_minus};
}

double tune_ff_gain(const GateConfig &config) {
  config.validate();
  if (!config.feedforward_enabled) {
    throw std::invalid_argument("tune_ff_gain: feedforward is disabled");
  }
  const double T = config.transmission;
  const double R = config.displacement_reflectance;
  const double up_eta = (1.0 - config.tap_loss) *
                        (config.opa2_waveguide ? 1.0 - config.opa2_waveguide->coupling_loss
                                               : 1.0 - config.l2);
  const double up_power = up_eta * config.opa2_p_amplitude() * config.opa2_p_amplitude();
  const double lower = (1.0 - R) * (1.0 - config.lower_arm_loss) * (1.0 - T);

  // Null the ancilla p amplitude at the weak port:
  //   sqrt(a * R * up_power * T) = sqrt(lower)
  const double attenuation = lower / (R * up_power * T);
  if (attenuation > 1.0) {
    const double min_gain_db = to_db(lower / (R * up_eta * T));
    throw infeasible_error(
        "feedforward cancellation needs attenuation " + format_double(attenuation) +
        " > 1; requires OPA2 power gain of at least " + format_double(min_gain_db) + " dB");
  }
  return attenuation;
}

GateOutcome run_gate(const GateConfig &config, const GaussianState &input) {
  GateChannels channels = build_gate_channels(config, config.phase_error);
  GaussianState initial = prepared_state(config, input);

  QuadPair off = readout(apply(channels.off, initial));
  QuadPair main = config.feedforward_enabled ? readout(apply(channels.on, initial)) : off;

  return GateOutcome{main.s_plus, main.s_minus, main.s_plus * main.s_minus,
                     off.s_plus,  off.s_minus,  off.s_plus * off.s_minus};
}

GateOutcome run_gate_explicit_opa3(const GateConfig &config, const GaussianState &input) {
  GateChannels channels = build_gate_channels(config, config.phase_error);
  GaussianState initial = prepared_state(config, input);
  const double g3 = db_to_ratio(config.opa3_gain_db);
  GaussianChannel readout_gain = ideal_opa_channel(g3, kModeOut, 2);

  auto measure = [&](const GaussianChannel &ch) {
    GaussianState out = apply(compose(readout_gain, ch), initial);
    // Shot noise references pass through the same amplifier.
    return QuadPair{variance(out, {kModeOut, QuadAxis::X}) / (kVacuumVariance / g3),
                    variance(out, {kModeOut, QuadAxis::P}) / (kVacuumVariance * g3)};
  };

  QuadPair off = measure(channels.off);
  QuadPair main = config.feedforward_enabled ? measure(channels.on) : off;
  return GateOutcome{main.s_plus, main.s_minus, main.s_plus * main.s_minus,
                     off.s_plus,  off.s_minus,  off.s_plus * off.s_minus};
}

double cancellation_level(const GateConfig &config, double phase_error) {
  GateChannels channels = build_gate_channels(config, phase_error);
  const GaussianState anc = config.ancilla.state();
  const std::size_t row = 2 * kModeOut + 1;  // output p
  const std::size_t col_x = 2 * kModeOut;    // ancilla occupies the second slot
  const std::size_t col_p = 2 * kModeOut + 1;

  auto ancilla_excess = [&](const GaussianChannel &ch) {
    const double cx = ch.scale(row, col_x);
    const double cp = ch.scale(row, col_p);
    return cx * cx * anc.cov(0, 0) + cp * cp * anc.cov(1, 1);
  };

  const double excess_on = ancilla_excess(channels.on);
  const double excess_off = ancilla_excess(channels.off);
  if (!(excess_off > 0.0)) {
    throw consistency_error("cancellation_level: no ancilla coupling without feedforward");
  }
  const double level = 10.0 * std::log10(excess_on / excess_off);
  return std::max(level, kLevelFloorDb);
}

std::vector<SweepRecord> sweep_transmittance(const GateConfig &config, std::vector<double> t_grid,
                                             unsigned threads) {
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= 1.0)) {
      throw std::invalid_argument("sweep_transmittance: grid values must be in (0,1]");
    }
  }
  std::sort(t_grid.begin(), t_grid.end());
  std::vector<SweepRecord> records(t_grid.size());

  auto eval = [&](std::size_t i) {
    GateConfig point = config;
    point.transmission = t_grid[i];
    GateOutcome pipe = run_gate(point, vacuum(1));
    GateOutcome closed = analytic_variances(point);
    records[i] = SweepRecord{t_grid[i],
                             to_db(pipe.s_plus),
                             to_db(pipe.s_minus),
                             pipe.product,
                             to_db(pipe.s_plus_pre),
                             to_db(pipe.s_minus_pre),
                             pipe.product_pre,
                             to_db(closed.s_plus),
                             to_db(closed.s_minus)};
  };

  const unsigned workers = std::max(1u, threads);
  if (workers == 1 || records.size() <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      eval(i);
    }
  } else {
    std::vector<std::thread> pool;
    std::size_t n = records.size();
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) {
          eval(i);
        }
      });
    }
    for (auto &t : pool) {
      t.join();
    }
  }
  return records;
}

void SpectralModel::validate() const {
  if (!(mask_inner_hz >= 0.0 && mask_inner_hz < mask_outer_hz)) {
    throw std::invalid_argument("SpectralModel: need 0 <= mask_inner < mask_outer");
  }
  if (!std::isfinite(delta_tau_s) || !std::isfinite(gdd_s2)) {
    throw std::invalid_argument("SpectralModel: non-finite dispersion parameters");
  }
}

double SpectralModel::phase_at(double f_hz) const {
  const double w = 2.0 * std::numbers::pi * f_hz;
  return w * delta_tau_s + 0.5 * gdd_s2 * w * w;
}

SpectralSweepResult spectral_sweep(const GateConfig &config, const SpectralModel &model,
                                   std::vector<double> f_grid_hz, unsigned threads) {
  model.validate();
  for (double f : f_grid_hz) {
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw std::invalid_argument("spectral_sweep: frequencies must be >= 0");
    }
  }
  std::sort(f_grid_hz.begin(), f_grid_hz.end());

  // The feedforward weight is tuned once, at zero sideband offset; the
  // dispersion phase then degrades that fixed tuning across the band.
  GateConfig tuned = config;
  if (tuned.feedforward_enabled && !tuned.ff_attenuation) {
    tuned.ff_attenuation = tune_ff_gain(tuned);
  }

  std::vector<SpectralRecord> records(f_grid_hz.size());
  auto eval = [&](std::size_t i) {
    GateConfig point = tuned;
    point.phase_error = config.phase_error + model.phase_at(f_grid_hz[i]);
    GateOutcome out = run_gate(point, vacuum(1));
    records[i] = SpectralRecord{f_grid_hz[i], out.s_plus, out.s_minus,
                                cancellation_level(tuned, point.phase_error)};
  };

  const unsigned workers = std::max(1u, threads);
  if (workers == 1 || records.size() <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      eval(i);
    }
  } else {
    std::vector<std::thread> pool;
    std::size_t n = records.size();
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) {
          eval(i);
        }
      });
    }
    for (auto &t : pool) {
      t.join();
    }
  }

  double sum_plus = 0.0, sum_minus = 0.0;
  std::size_t bins = 0;
  for (const SpectralRecord &rec : records) {
    if (rec.f_hz >= model.mask_inner_hz && rec.f_hz <= model.mask_outer_hz) {
      sum_plus += rec.s_plus;
      sum_minus += rec.s_minus;
      ++bins;
    }
  }
  if (bins == 0) {
    throw band_error("spectral_sweep: the frequency masks select no bins");
  }
  const double band_plus = sum_plus / static_cast<double>(bins);
  const double band_minus = sum_minus / static_cast<double>(bins);
  return SpectralSweepResult{std::move(records), band_plus, band_minus, band_plus * band_minus,
                             bins};
}

}  // namespace ffgate
