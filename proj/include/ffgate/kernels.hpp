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

#ifndef FFGATE_KERNELS_HPP
#define FFGATE_KERNELS_HPP

#include <cstddef>

// Dense double-precision kernels behind the matrix layer.
//
// Every backend accumulates in exactly the same order and never fuses
// multiply-add, so scalar and SIMD variants produce bit-identical results.
// The active backend is picked once at startup from CPU capabilities and can
// be overridden (mainly by the equivalence tests).

namespace ffgate::kernels {

enum class Backend { scalar, avx2, neon };

const char *backend_name(Backend b);
bool available(Backend b);
Backend active();
void set_active(Backend b);  // throws std::invalid_argument if unavailable

// c = a * b, row-major, c (r x n), a (r x m), b (m x n). c must not alias a or b.
void mat_mul(double *c, const double *a, const double *b, std::size_t r, std::size_t m,
             std::size_t n);

// y += x, elementwise.
void add_inplace(double *y, const double *x, std::size_t n);

}  // namespace ffgate::kernels

#endif
