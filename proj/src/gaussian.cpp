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

#include "ffgate/gaussian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "ffgate/errors.hpp"

namespace ffgate {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPhysicalityTol = 1e-9;

Eigen::MatrixXd to_eigen(const Mat &m) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      m.data.data(), static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
}

void check_mode(std::size_t mode, std::size_t num_modes, const char *who) {
  if (mode >= num_modes) {
    throw std::invalid_argument(std::string(who) + ": mode index out of range");
  }
}

void validate_state(const GaussianState &s) {
  const std::size_t n = 2 * s.num_modes;
  if (s.num_modes == 0) {
    throw std::invalid_argument("GaussianState: num_modes must be >= 1");
  }
  if (s.mean.size() != n || s.cov.rows != n || s.cov.cols != n) {
    throw std::invalid_argument("GaussianState: mean/cov dimensions do not match num_modes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(s.cov(i, j) - s.cov(j, i)) > kSymmetryTol) {
        throw consistency_error("GaussianState: covariance asymmetric beyond tolerance");
      }
    }
    if (!std::isfinite(s.cov(i, i)) || !std::isfinite(s.mean[i])) {
      throw std::invalid_argument("GaussianState: non-finite entries");
    }
  }
  // 1e-9 absolute, widened by the representation error floor of the
  // covariance itself: entries of magnitude V carry O(eps V) roundoff, so
  // certification below that is meaningless for extreme squeezing or gain.
  double diag_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag_scale = std::max(diag_scale, std::fabs(s.cov(i, i)));
  }
  const double tol =
      kPhysicalityTol + 16.0 * std::numeric_limits<double>::epsilon() * diag_scale;
  double nu_min = min_symplectic_eigenvalue(s.cov);
  if (nu_min < kVacuumVariance - tol) {
    throw consistency_error("GaussianState: unphysical covariance, min symplectic eigenvalue " +
                            format_double(nu_min));
  }
}

}  // namespace

GaussianState::GaussianState(std::size_t num_modes_, Vec mean_, Mat cov_)
    : num_modes(num_modes_), mean(std::move(mean_)), cov(std::move(cov_)) {
  validate_state(*this);
}

GaussianState vacuum(std::size_t num_modes) {
  if (num_modes == 0) {
    throw std::invalid_argument("vacuum: num_modes must be >= 1");
  }
  const std::size_t n = 2 * num_modes;
  Mat cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    cov(i, i) = kVacuumVariance;
  }
  return GaussianState(num_modes, Vec(n, 0.0), std::move(cov));
}

GaussianState squeezed_vacuum(double r) {
  if (!std::isfinite(r)) {
    throw std::invalid_argument("squeezed_vacuum: r must be finite");
  }
  Mat cov(2, 2);
  cov(0, 0) = kVacuumVariance * std::exp(-2.0 * r);
  cov(1, 1) = kVacuumVariance * std::exp(2.0 * r);
  return GaussianState(1, Vec(2, 0.0), std::move(cov));
}

GaussianState tensor(const GaussianState &a, const GaussianState &b) {
  const std::size_t na = 2 * a.num_modes, nb = 2 * b.num_modes;
  Mat cov(na + nb, na + nb);
  Vec mean(na + nb, 0.0);
  for (std::size_t i = 0; i < na; ++i) {
    mean[i] = a.mean[i];
    for (std::size_t j = 0; j < na; ++j) {
      cov(i, j) = a.cov(i, j);
    }
  }
  for (std::size_t i = 0; i < nb; ++i) {
    mean[na + i] = b.mean[i];
    for (std::size_t j = 0; j < nb; ++j) {
      cov(na + i, na + j) = b.cov(i, j);
    }
  }
  return GaussianState(a.num_modes + b.num_modes, std::move(mean), std::move(cov));
}

GaussianChannel identity_channel(std::size_t num_modes) {
  const std::size_t n = 2 * num_modes;
  return GaussianChannel{Mat::identity(n), Mat(n, n)};
}

GaussianChannel beam_splitter_channel(double transmission, std::size_t mode_in,
                                      std::size_t mode_anc, std::size_t num_modes) {
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw std::invalid_argument("beam_splitter_channel: transmission outside [0,1]");
  }
  check_mode(mode_in, num_modes, "beam_splitter_channel");
  check_mode(mode_anc, num_modes, "beam_splitter_channel");
  if (mode_in == mode_anc) {
    throw std::invalid_argument("beam_splitter_channel: modes must be distinct");
  }
  GaussianChannel ch = identity_channel(num_modes);
  const double keep = std::sqrt(1.0 - transmission);
  const double cross = std::sqrt(transmission);
  for (std::size_t q = 0; q < 2; ++q) {
    const std::size_t i = 2 * mode_in + q;
    const std::size_t j = 2 * mode_anc + q;
    ch.scale(i, i) = keep;
    ch.scale(i, j) = -cross;
    ch.scale(j, i) = cross;
    ch.scale(j, j) = keep;
  }
  return ch;
}

GaussianChannel ideal_opa_channel(double power_gain, std::size_t mode, std::size_t num_modes) {
  if (!std::isfinite(power_gain) || power_gain < 1.0) {
    throw std::invalid_argument("ideal_opa_channel: power gain must be finite and >= 1");
  }
  check_mode(mode, num_modes, "ideal_opa_channel");
  GaussianChannel ch = identity_channel(num_modes);
  ch.scale(2 * mode, 2 * mode) = 1.0 / std::sqrt(power_gain);
  ch.scale(2 * mode + 1, 2 * mode + 1) = std::sqrt(power_gain);
  return ch;
}

GaussianChannel loss_channel(double eta, std::size_t mode, std::size_t num_modes) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("loss_channel: eta outside [0,1]");
  }
  check_mode(mode, num_modes, "loss_channel");
  GaussianChannel ch = identity_channel(num_modes);
  const double amp = std::sqrt(eta);
  for (std::size_t q = 0; q < 2; ++q) {
    const std::size_t i = 2 * mode + q;
    ch.scale(i, i) = amp;
    ch.noise(i, i) = (1.0 - eta) * kVacuumVariance;
  }
  return ch;
}

GaussianChannel phase_rotation_channel(double theta, std::size_t mode, std::size_t num_modes) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("phase_rotation_channel: theta must be finite");
  }
  check_mode(mode, num_modes, "phase_rotation_channel");
  GaussianChannel ch = identity_channel(num_modes);
  const double c = std::cos(theta), s = std::sin(theta);
  const std::size_t i = 2 * mode;
  ch.scale(i, i) = c;
  ch.scale(i, i + 1) = -s;
  ch.scale(i + 1, i) = s;
  ch.scale(i + 1, i + 1) = c;
  return ch;
}

GaussianChannel compose(const GaussianChannel &second, const GaussianChannel &first) {
  if (!second.scale.same_shape(first.scale)) {
    throw std::invalid_argument("compose: channel dimensions differ");
  }
  GaussianChannel out;
  out.scale = mul(second.scale, first.scale);
  out.noise = symmetrize(add(sandwich(second.scale, first.noise), second.noise));
  return out;
}

GaussianState apply(const GaussianChannel &channel, const GaussianState &state) {
  if (channel.scale.cols != 2 * state.num_modes) {
    throw std::invalid_argument("apply: channel and state dimensions differ");
  }
  Mat cov = symmetrize(add(sandwich(channel.scale, state.cov), channel.noise));
  Vec mean = mul(channel.scale, state.mean);
  return GaussianState(state.num_modes, std::move(mean), std::move(cov));
}

double variance(const GaussianState &state, QuadratureSelector sel) {
  if (sel.mode >= state.num_modes) {
    throw std::invalid_argument("variance: mode index out of range");
  }
  const std::size_t i = 2 * sel.mode + (sel.axis == QuadAxis::P ? 1 : 0);
  return state.cov(i, i);
}

double shot_normalized(double variance) { return variance / kVacuumVariance; }

double to_db(double ratio) {
  if (!(ratio > 0.0)) {
    throw std::invalid_argument("to_db: ratio must be positive");
  }
  return 10.0 * std::log10(ratio);
}

double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }

Mat symplectic_form(std::size_t num_modes) {
  Mat omega(2 * num_modes, 2 * num_modes);
  for (std::size_t m = 0; m < num_modes; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

std::vector<double> symplectic_eigenvalues(const Mat &cov) {
  if (cov.rows != cov.cols || cov.rows % 2 != 0 || cov.rows == 0) {
    throw std::invalid_argument("symplectic_eigenvalues: covariance must be 2M x 2M");
  }
  const std::size_t num_modes = cov.rows / 2;
  const Eigen::MatrixXd omega = to_eigen(symplectic_form(num_modes));
  std::vector<double> moduli(cov.rows);

  // Preferred route for positive-definite cov: with C = L L^T, the values are
  // the singular value pairs of the antisymmetric L^T Omega L. That matrix
  // has norm nu_max rather than |C|, so strongly squeezed or amplified states
  // still come out to near machine accuracy.
  Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(cov));
  if (llt.info() == Eigen::Success) {
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(l.transpose() * omega * l);
    for (std::size_t i = 0; i < cov.rows; ++i) {
      moduli[i] = svd.singularValues()(static_cast<Eigen::Index>(i));
    }
  } else {
    // Indefinite input (unphysical or singular): fall back to the moduli of
    // the eigenvalues of Omega C.
    Eigen::EigenSolver<Eigen::MatrixXd> solver(omega * to_eigen(cov),
                                               /*computeEigenvectors=*/false);
    for (std::size_t i = 0; i < cov.rows; ++i) {
      moduli[i] = std::abs(solver.eigenvalues()(static_cast<Eigen::Index>(i)));
    }
  }
  std::sort(moduli.begin(), moduli.end());
  // Values come in equal pairs; keep one per pair.
  std::vector<double> out(num_modes);
  for (std::size_t m = 0; m < num_modes; ++m) {
    out[m] = moduli[2 * m];
  }
  return out;
}

double min_symplectic_eigenvalue(const Mat &cov) { return symplectic_eigenvalues(cov).front(); }

bool is_symplectic(const Mat &scale, double tol) {
  if (scale.rows != scale.cols || scale.rows % 2 != 0) {
    return false;
  }
  Mat omega = symplectic_form(scale.rows / 2);
  return max_abs_diff(sandwich(scale, omega), omega) <= tol;
}

bool is_completely_positive(const GaussianChannel &channel, double tol) {
  const std::size_t n = channel.scale.rows;
  Mat omega = symplectic_form(n / 2);
  Mat comm = sub(omega, sandwich(channel.scale, omega));
  Eigen::MatrixXcd h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::complex<double>(channel.noise(i, j), 0.5 * comm(i, j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

}  // namespace ffgate
