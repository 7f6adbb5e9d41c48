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

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffgate/analysis.hpp"
#include "ffgate/config.hpp"
#include "ffgate/csvio.hpp"
#include "ffgate/errors.hpp"
#include "ffgate/gate.hpp"
#include "ffgate/mat.hpp"
#include "ffgate/opa.hpp"
#include "ffgate/version.hpp"
#include "json.hpp"

namespace {

using ffgate::csv_row;
using ffgate::format_double;
using ffgate::to_db;
using nlohmann::json;

// Exit codes are a stable contract:
//   0 success, 2 config/parse, 3 infeasible physics, 4 empty band,
//   5 degenerate inference, 1 internal inconsistency.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitEmptyBand = 4;
constexpr int kExitDegenerate = 5;

void print_manifest(const ffgate::RunManifest &m) {
  std::cerr << "# ffgate " << m.version << "\n# command: " << m.command
            << "\n# config digest: " << m.config_digest << "\n";
}

json manifest_json(const ffgate::RunManifest &m) {
  return json{{"command", m.command}, {"version", m.version}, {"config_digest", m.config_digest}};
}

struct SimulateRow {
  std::string quantity;
  double pipeline_db;
  double analytic_db;
};

int cmd_simulate(const std::string &config_path, bool as_json) {
  ffgate::ToolkitConfig config = ffgate::load_config_file(config_path);
  ffgate::RunManifest manifest = ffgate::make_manifest("simulate", config);
  print_manifest(manifest);

  auto gather = [](const ffgate::GateConfig &gate) {
    ffgate::GateOutcome pipe = ffgate::run_gate(gate, ffgate::vacuum(1));
    ffgate::GateOutcome closed = ffgate::analytic_variances(gate);
    std::vector<SimulateRow> rows = {
        {"S_plus", to_db(pipe.s_plus), to_db(closed.s_plus)},
        {"S_minus", to_db(pipe.s_minus), to_db(closed.s_minus)},
        {"S_plus_pre", to_db(pipe.s_plus_pre), to_db(closed.s_plus_pre)},
        {"S_minus_pre", to_db(pipe.s_minus_pre), to_db(closed.s_minus_pre)},
    };
    return std::pair(rows, std::pair(pipe, closed));
  };

  auto [rows, outcomes] = gather(config.gate);

  // A measured ancilla pair was itself read out through the lossy OPA3 path;
  // the loss-corrected pair is the other defensible convention, so report
  // both instead of picking one.
  std::optional<decltype(gather(config.gate))> corrected;
  if (!config.gate.ancilla.is_pure() && config.gate.l3 > 0.0) {
    const double l3 = config.gate.l3;
    const double sm = (config.gate.ancilla.s_minus() - l3) / (1.0 - l3);
    const double sp = (config.gate.ancilla.s_plus() - l3) / (1.0 - l3);
    if (sm > 0.0 && sm * sp >= 1.0 - 1e-9) {
      ffgate::GateConfig alt = config.gate;
      alt.ancilla = ffgate::AncillaSpec::measured(sm, sp);
      corrected = gather(alt);
      for (const SimulateRow &row : corrected->first) {
        rows.push_back({row.quantity + "_corranc", row.pipeline_db, row.analytic_db});
      }
    }
  }

  if (as_json) {
    json doc;
    doc["manifest"] = manifest_json(manifest);
    doc["columns"] = {"quantity", "pipeline_dB", "analytic_dB", "delta_dB"};
    doc["rows"] = json::array();
    for (const SimulateRow &row : rows) {
      doc["rows"].push_back(
          {row.quantity, row.pipeline_db, row.analytic_db, row.pipeline_db - row.analytic_db});
    }
    doc["products"] = {{"pipeline", outcomes.first.product},
                       {"pipeline_pre", outcomes.first.product_pre},
                       {"analytic", outcomes.second.product},
                       {"analytic_pre", outcomes.second.product_pre}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  std::string out = csv_row({"quantity", "pipeline_dB", "analytic_dB", "delta_dB"});
  for (const SimulateRow &row : rows) {
    out += row.quantity + ',' + format_double(row.pipeline_db) + ',' +
           format_double(row.analytic_db) + ',' +
           format_double(row.pipeline_db - row.analytic_db) + '\n';
  }
  out += '\n';
  out += csv_row({"product", "pipeline", "analytic"});
  out += "post," + format_double(outcomes.first.product) + ',' +
         format_double(outcomes.second.product) + '\n';
  out += "pre," + format_double(outcomes.first.product_pre) + ',' +
         format_double(outcomes.second.product_pre) + '\n';
  std::cout << out;
  return kExitOk;
}

int cmd_sweep(const std::string &config_path, std::vector<double> t_grid, unsigned threads,
              bool as_json) {
  ffgate::ToolkitConfig config = ffgate::load_config_file(config_path);
  ffgate::RunManifest manifest = ffgate::make_manifest("sweep", config);
  print_manifest(manifest);

  std::vector<ffgate::SweepRecord> records =
      ffgate::sweep_transmittance(config.gate, std::move(t_grid), threads);

  const std::vector<std::string> columns = {
      "T",           "S_plus_dB",      "S_minus_dB",      "product",
      "S_plus_pre_dB", "S_minus_pre_dB", "product_pre",
      "analytic_S_plus_dB", "analytic_S_minus_dB"};

  if (as_json) {
    json doc;
    doc["manifest"] = manifest_json(manifest);
    doc["columns"] = columns;
    doc["rows"] = json::array();
    for (const ffgate::SweepRecord &r : records) {
      doc["rows"].push_back({r.transmission, r.s_plus_db, r.s_minus_db, r.product,
                             r.s_plus_pre_db, r.s_minus_pre_db, r.product_pre,
                             r.analytic_s_plus_db, r.analytic_s_minus_db});
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  std::string out = csv_row(columns);
  for (const ffgate::SweepRecord &r : records) {
    out += csv_row(std::vector<double>{r.transmission, r.s_plus_db, r.s_minus_db, r.product,
                                       r.s_plus_pre_db, r.s_minus_pre_db, r.product_pre,
                                       r.analytic_s_plus_db, r.analytic_s_minus_db});
  }
  std::cout << out;
  return kExitOk;
}

int cmd_spectrum(const std::string &config_path, double fmax_thz, unsigned bins, unsigned threads,
                 bool as_json) {
  if (!(fmax_thz > 0.0)) {
    throw std::invalid_argument("--fmax must be positive");
  }
  if (bins < 2) {
    throw std::invalid_argument("--bins must be at least 2");
  }
  ffgate::ToolkitConfig config = ffgate::load_config_file(config_path);
  ffgate::RunManifest manifest = ffgate::make_manifest("spectrum", config);
  print_manifest(manifest);

  std::vector<double> grid(bins);
  for (unsigned i = 0; i < bins; ++i) {
    grid[i] = fmax_thz * 1e12 * static_cast<double>(i) / static_cast<double>(bins - 1);
  }
  ffgate::SpectralSweepResult result =
      ffgate::spectral_sweep(config.gate, config.spectral, std::move(grid), threads);

  if (as_json) {
    json doc;
    doc["manifest"] = manifest_json(manifest);
    doc["columns"] = {"f_THz", "S_plus_dB", "S_minus_dB", "cancellation_dB"};
    doc["rows"] = json::array();
    for (const ffgate::SpectralRecord &r : result.records) {
      doc["rows"].push_back(
          {r.f_hz / 1e12, to_db(r.s_plus), to_db(r.s_minus), r.cancellation_db});
    }
    doc["summary"] = {{"band_S_plus_dB", to_db(result.band_s_plus)},
                      {"band_S_minus_dB", to_db(result.band_s_minus)},
                      {"band_product", result.band_product},
                      {"band_bins", result.band_bins}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  std::string out = csv_row({"f_THz", "S_plus_dB", "S_minus_dB", "cancellation_dB"});
  for (const ffgate::SpectralRecord &r : result.records) {
    out += csv_row(
        std::vector<double>{r.f_hz / 1e12, to_db(r.s_plus), to_db(r.s_minus), r.cancellation_db});
  }
  out += '\n';
  out += csv_row({"summary", "band_S_plus_dB", "band_S_minus_dB", "band_product", "band_bins"});
  out += "band_average," + format_double(to_db(result.band_s_plus)) + ',' +
         format_double(to_db(result.band_s_minus)) + ',' + format_double(result.band_product) +
         ',' + std::to_string(result.band_bins) + '\n';
  std::cout << out;
  return kExitOk;
}

int cmd_infer_loss(double s_plus_db, double s_minus_db, const std::vector<double> &budget,
                   bool as_json) {
  ffgate::SqueezingPair pair = ffgate::SqueezingPair::from_db(s_plus_db, s_minus_db);
  ffgate::LossInference inf = ffgate::infer_loss_and_r(pair);

  // Forward model sanity: push (loss, r) back through S = (1-L) e^{+/-2r} + L.
  const double fwd_plus = (1.0 - inf.loss) * std::exp(2.0 * inf.r) + inf.loss;
  const double fwd_minus = (1.0 - inf.loss) * std::exp(-2.0 * inf.r) + inf.loss;
  const double residual =
      std::max(std::fabs(fwd_plus - pair.s_plus), std::fabs(fwd_minus - pair.s_minus));

  std::optional<ffgate::BudgetTotals> totals;
  if (!budget.empty()) {
    ffgate::LossBudget lb;
    for (std::size_t i = 0; i < budget.size(); ++i) {
      lb.items.emplace_back("item" + std::to_string(i + 1), budget[i]);
    }
    totals = ffgate::loss_budget_product(lb);
  }

  if (as_json) {
    json doc;
    doc["values"] = {{"loss", inf.loss},
                     {"r", inf.r},
                     {"product", ffgate::product_metric(pair)},
                     {"forward_residual", residual}};
    if (totals) {
      doc["budget"] = {{"transmittance", totals->transmittance},
                       {"loss", totals->loss},
                       {"inferred_minus_budget_loss", inf.loss - totals->loss}};
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  std::string out = csv_row({"quantity", "value"});
  out += "loss," + format_double(inf.loss) + '\n';
  out += "r," + format_double(inf.r) + '\n';
  out += "product," + format_double(ffgate::product_metric(pair)) + '\n';
  out += "forward_residual," + format_double(residual) + '\n';
  if (totals) {
    out += "budget_transmittance," + format_double(totals->transmittance) + '\n';
    out += "budget_loss," + format_double(totals->loss) + '\n';
    out += "inferred_minus_budget_loss," + format_double(inf.loss - totals->loss) + '\n';
  }
  std::cout << out;
  return kExitOk;
}

int cmd_opa_check(double g, double alpha, double length, unsigned slices, bool as_json) {
  ffgate::OpaSpec spec{g, alpha, length};
  ffgate::GaussianChannel closed = ffgate::lossy_opa_channel(spec, 0, 1);
  ffgate::GaussianChannel sliced = ffgate::opa_slice_channel(spec, slices, 0, 1);

  struct EntryRow {
    const char *name;
    double closed;
    double sliced;
  };
  std::vector<EntryRow> entries = {
      {"scale_x", closed.scale(0, 0), sliced.scale(0, 0)},
      {"scale_p", closed.scale(1, 1), sliced.scale(1, 1)},
      {"noise_x", closed.noise(0, 0), sliced.noise(0, 0)},
      {"noise_p", closed.noise(1, 1), sliced.noise(1, 1)},
  };
  double max_rel = 0.0;
  for (const EntryRow &e : entries) {
    const double denom = std::max(std::fabs(e.closed), 1e-300);
    max_rel = std::max(max_rel, std::fabs(e.sliced - e.closed) / denom);
  }
  const double eta = ffgate::opa_efficiency(spec);
  ffgate::LossAmpDecomposition dec = ffgate::decompose_loss_then_amp(spec);

  // p-row of loss(eta) then ideal gain, against the closed form.
  const double p_scale = std::sqrt(dec.eta) * std::sqrt(dec.gain);
  const double p_noise = dec.gain * (1.0 - dec.eta) * 0.5;
  const double p_row_err = std::max(std::fabs(p_scale - closed.scale(1, 1)),
                                    std::fabs(p_noise - closed.noise(1, 1)));

  if (as_json) {
    json doc;
    doc["columns"] = {"quantity", "closed_form", "slice", "rel_deviation"};
    doc["rows"] = json::array();
    for (const EntryRow &e : entries) {
      const double denom = std::max(std::fabs(e.closed), 1e-300);
      doc["rows"].push_back({e.name, e.closed, e.sliced, std::fabs(e.sliced - e.closed) / denom});
    }
    doc["summary"] = {{"max_rel_deviation", max_rel},
                      {"efficiency", eta},
                      {"decomposition_eta", dec.eta},
                      {"decomposition_gain", dec.gain},
                      {"p_row_reconstruction_error", p_row_err}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  std::string out = csv_row({"quantity", "closed_form", "slice", "rel_deviation"});
  for (const EntryRow &e : entries) {
    const double denom = std::max(std::fabs(e.closed), 1e-300);
    out += std::string(e.name) + ',' + format_double(e.closed) + ',' + format_double(e.sliced) +
           ',' + format_double(std::fabs(e.sliced - e.closed) / denom) + '\n';
  }
  out += '\n';
  out += csv_row({"quantity", "value"});
  out += "max_rel_deviation," + format_double(max_rel) + '\n';
  out += "efficiency," + format_double(eta) + '\n';
  out += "decomposition_eta," + format_double(dec.eta) + '\n';
  out += "decomposition_gain," + format_double(dec.gain) + '\n';
  out += "p_row_reconstruction_error," + format_double(p_row_err) + '\n';
  std::cout << out;
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Gaussian-circuit simulator for an all-optical feedforward squeezing gate"};
  app.set_version_flag("--version", std::string("ffgate ") + ffgate::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  bool as_json = false;
  unsigned threads = 1;

  CLI::App *simulate = app.add_subcommand("simulate", "Run the gate once, pipeline vs closed form");
  simulate->add_option("config", config_path, "experiment config file")->required();
  simulate->add_flag("--json", as_json, "emit JSON instead of CSV");

  std::vector<double> t_grid = {0.30, 0.40, 0.50, 0.62};
  CLI::App *sweep = app.add_subcommand("sweep", "Sweep the variable splitter transmission");
  sweep->add_option("config", config_path)->required();
  sweep->add_option("--t-grid", t_grid, "comma-separated transmissions")->delimiter(',');
  sweep->add_option("--threads", threads, "worker threads");
  sweep->add_flag("--json", as_json);

  double fmax_thz = 2.0;
  unsigned bins = 201;
  CLI::App *spectrum = app.add_subcommand("spectrum", "Sideband sweep with the dispersion model");
  spectrum->add_option("config", config_path)->required();
  spectrum->add_option("--fmax", fmax_thz, "maximum sideband frequency, THz");
  spectrum->add_option("--bins", bins, "number of frequency bins");
  spectrum->add_option("--threads", threads);
  spectrum->add_flag("--json", as_json);

  double s_plus_db = 0.0, s_minus_db = 0.0;
  std::vector<double> budget;
  CLI::App *infer = app.add_subcommand("infer-loss", "Loss and r from a squeezing pair (dB)");
  infer->add_option("s_plus_db", s_plus_db, "anti-squeezing magnitude, dB")->required();
  infer->add_option("s_minus_db", s_minus_db, "squeezing magnitude, dB")->required();
  infer->add_option("--budget", budget, "itemized transmittances to compare against")
      ->delimiter(',');
  infer->add_flag("--json", as_json);

  double wg_g = 0.0, wg_alpha = 0.0, wg_len = 1.0;
  unsigned slices = 10000;
  CLI::App *opa_check = app.add_subcommand("opa-check", "Lossy waveguide: closed form vs slices");
  opa_check->add_option("--g", wg_g, "parametric gain per meter")->required();
  opa_check->add_option("--alpha", wg_alpha, "extinction per meter")->required();
  opa_check->add_option("--L", wg_len, "waveguide length, m")->required();
  opa_check->add_option("--slices", slices, "slice count");
  opa_check->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) {
      return cmd_simulate(config_path, as_json);
    }
    if (sweep->parsed()) {
      return cmd_sweep(config_path, t_grid, threads, as_json);
    }
    if (spectrum->parsed()) {
      return cmd_spectrum(config_path, fmax_thz, bins, threads, as_json);
    }
    if (infer->parsed()) {
      return cmd_infer_loss(s_plus_db, s_minus_db, budget, as_json);
    }
    if (opa_check->parsed()) {
      return cmd_opa_check(wg_g, wg_alpha, wg_len, slices, as_json);
    }
  } catch (const ffgate::config_error &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ffgate::infeasible_error &e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ffgate::band_error &e) {
    std::cerr << "empty band: " << e.what() << "\n";
    return kExitEmptyBand;
  } catch (const ffgate::degenerate_error &e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
