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

#include "ffgate/mat.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ffgate/kernels.hpp"

namespace ffgate {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

Mat mul(const Mat &a, const Mat &b) {
  if (a.cols != b.rows) {
    throw std::invalid_argument("mat mul: inner dimensions differ");
  }
  Mat c(a.rows, b.cols);
  kernels::mat_mul(c.data.data(), a.data.data(), b.data.data(), a.rows, a.cols, b.cols);
  return c;
}

Vec mul(const Mat &a, const Vec &x) {
  if (a.cols != x.size()) {
    throw std::invalid_argument("mat-vec mul: dimensions differ");
  }
  Vec y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.cols; ++k) {
      acc += a(i, k) * x[k];
    }
    y[i] = acc;
  }
  return y;
}

Mat transpose(const Mat &a) {
  Mat t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      t(j, i) = a(i, j);
    }
  }
  return t;
}

Mat add(const Mat &a, const Mat &b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("mat add: shapes differ");
  }
  Mat c = a;
  kernels::add_inplace(c.data.data(), b.data.data(), c.data.size());
  return c;
}

Mat sub(const Mat &a, const Mat &b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("mat sub: shapes differ");
  }
  Mat c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) {
    c.data[i] -= b.data[i];
  }
  return c;
}

Mat scale_by(const Mat &a, double s) {
  Mat c = a;
  for (double &v : c.data) {
    v *= s;
  }
  return c;
}

Mat sandwich(const Mat &a, const Mat &c) { return mul(mul(a, c), transpose(a)); }

Mat symmetrize(const Mat &m) {
  if (m.rows != m.cols) {
    throw std::invalid_argument("symmetrize: matrix not square");
  }
  Mat s(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      s(i, j) = (m(i, j) + m(j, i)) / 2.0;
    }
  }
  return s;
}

double max_abs_diff(const Mat &a, const Mat &b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("max_abs_diff: shapes differ");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    d = std::max(d, std::fabs(a.data[i] - b.data[i]));
  }
  return d;
}

double max_abs(const Mat &a) {
  double d = 0.0;
  for (double v : a.data) {
    d = std::max(d, std::fabs(v));
  }
  return d;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_text(const Mat &m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j) out += ' ';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string to_text(const Vec &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  out += '\n';
  return out;
}

}  // namespace ffgate
