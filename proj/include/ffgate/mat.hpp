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

#ifndef FFGATE_MAT_HPP
#define FFGATE_MAT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace ffgate {

using Vec = std::vector<double>;

/// Small dense row-major matrix of doubles. Quadrature covariance and scale
/// matrices are 2M x 2M with M a handful of optical modes, so everything here
/// favors clarity over blocking tricks; the arithmetic itself runs on the
/// dispatchable kernels.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double &operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Mat identity(std::size_t n);

  bool same_shape(const Mat &o) const { return rows == o.rows && cols == o.cols; }
};

Mat mul(const Mat &a, const Mat &b);
Vec mul(const Mat &a, const Vec &x);
Mat transpose(const Mat &a);
Mat add(const Mat &a, const Mat &b);
Mat sub(const Mat &a, const Mat &b);
Mat scale_by(const Mat &a, double s);

/// a * c * a^T (the covariance congruence transform).
Mat sandwich(const Mat &a, const Mat &c);

/// (m + m^T)/2; exact on already-symmetric input.
Mat symmetrize(const Mat &m);

double max_abs_diff(const Mat &a, const Mat &b);
double max_abs(const Mat &a);

/// Row-major plain text, one row per line, 17 significant digits.
std::string to_text(const Mat &m);
std::string to_text(const Vec &v);

/// Shortest decimal form that round-trips the double (17 significant digits).
std::string format_double(double v);

}  // namespace ffgate

#endif
