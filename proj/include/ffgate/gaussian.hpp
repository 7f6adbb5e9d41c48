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

#ifndef FFGATE_GAUSSIAN_HPP
#define FFGATE_GAUSSIAN_HPP

#include <cstddef>
#include <vector>

#include "ffgate/mat.hpp"

// Gaussian states of M optical modes and the affine channels acting on them.
//
// Quadrature convention: a = (x + ip)/sqrt(2), hbar = 1, so a vacuum mode has
// variance 1/2 in each quadrature. Vectors and matrices are ordered
// (x1, p1, x2, p2, ...). Every dB figure anywhere in the toolkit is a ratio
// against the 1/2 vacuum variance.

namespace ffgate {

inline constexpr double kVacuumVariance = 0.5;

enum class QuadAxis { X, P };

struct QuadratureSelector {
  std::size_t mode;
  QuadAxis axis;
};

/// Immutable M-mode Gaussian state. Construction validates symmetry of the
/// covariance (1e-12 per entry) and physicality (all symplectic eigenvalues
/// >= 1/2 - 1e-9).
struct GaussianState {
  std::size_t num_modes;
  Vec mean;  // length 2M
  Mat cov;   // 2M x 2M, symmetric

  GaussianState(std::size_t num_modes_, Vec mean_, Mat cov_);
};

/// Affine Gaussian map: cov -> scale cov scale^T + noise, mean -> scale mean.
/// Covers symplectic unitaries (noise = 0) and lossy or amplifying channels
/// (matching noise term) with a single application path.
struct GaussianChannel {
  Mat scale;
  Mat noise;

  std::size_t num_modes() const { return scale.rows / 2; }
};

GaussianState vacuum(std::size_t num_modes);
GaussianState squeezed_vacuum(double r);

/// Block-diagonal product state, a's modes first.
GaussianState tensor(const GaussianState &a, const GaussianState &b);

GaussianChannel identity_channel(std::size_t num_modes);

/// Two-mode mixing with transmission T:
///   a_out' = sqrt(1-T) a_in - sqrt(T) a_anc
///   b_out' = sqrt(T) a_in + sqrt(1-T) a_anc
/// acting identically on the x and p blocks of modes (mode_in, mode_anc).
GaussianChannel beam_splitter_channel(double transmission, std::size_t mode_in,
                                      std::size_t mode_anc, std::size_t num_modes);

/// Phase-sensitive amplification with p-quadrature power gain G >= 1:
/// x -> x / sqrt(G), p -> sqrt(G) p. Noise-free and symplectic.
GaussianChannel ideal_opa_channel(double power_gain, std::size_t mode, std::size_t num_modes);

/// Attenuation with power transmittance eta: scale sqrt(eta), plus the
/// (1-eta)/2 vacuum noise that keeps the map physical.
GaussianChannel loss_channel(double eta, std::size_t mode, std::size_t num_modes);

/// Rotation by theta in the (x, p) plane of one mode.
GaussianChannel phase_rotation_channel(double theta, std::size_t mode, std::size_t num_modes);

/// second AFTER first.
GaussianChannel compose(const GaussianChannel &second, const GaussianChannel &first);

/// Applies the channel; the result is validated like any constructed state
/// and a consistency_error is raised if it fails physicality.
GaussianState apply(const GaussianChannel &channel, const GaussianState &state);

double variance(const GaussianState &state, QuadratureSelector sel);
double shot_normalized(double variance);
double to_db(double ratio);
double db_to_ratio(double db);

/// The 2M x 2M symplectic form (block-diagonal [[0,1],[-1,0]] per mode).
Mat symplectic_form(std::size_t num_modes);

/// Moduli of the eigenvalue pairs of i*Omega*cov, ascending (M values).
std::vector<double> symplectic_eigenvalues(const Mat &cov);
double min_symplectic_eigenvalue(const Mat &cov);

bool is_symplectic(const Mat &scale, double tol);

/// Complete positivity: noise + (i/2)(Omega - scale Omega scale^T) >= 0,
/// checked through the smallest eigenvalue of that Hermitian matrix.
bool is_completely_positive(const GaussianChannel &channel, double tol);

}  // namespace ffgate

#endif
