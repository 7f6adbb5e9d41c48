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

#include "ffgate/kernels.hpp"

#include <stdexcept>

#if defined(__x86_64__) || defined(__i386__)
#define FFGATE_X86 1
#include <immintrin.h>
#elif defined(__aarch64__)
#define FFGATE_NEON 1
#include <arm_neon.h>
#endif

namespace ffgate::kernels {

namespace {

// ---- scalar reference ----

void mat_mul_scalar(double *c, const double *a, const double *b, std::size_t r, std::size_t m,
                    std::size_t n) {
  for (std::size_t i = 0; i < r; ++i) {
    const double *ai = a + i * m;
    double *ci = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        acc += ai[k] * b[k * n + j];
      }
      ci[j] = acc;
    }
  }
}

void add_inplace_scalar(double *y, const double *x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += x[i];
  }
}

// ---- AVX2 ----
//
// Broadcast-a times row-of-b with k ascending: each output lane accumulates in
// the same order as the scalar kernel, so results match bit for bit.

#if FFGATE_X86
__attribute__((target("avx2"))) void mat_mul_avx2(double *c, const double *a, const double *b,
                                                  std::size_t r, std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < r; ++i) {
    const double *ai = a + i * m;
    double *ci = c + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t k = 0; k < m; ++k) {
        __m256d av = _mm256_set1_pd(ai[k]);
        __m256d bv = _mm256_loadu_pd(b + k * n + j);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(av, bv));
      }
      _mm256_storeu_pd(ci + j, acc);
    }
    for (; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        acc += ai[k] * b[k * n + j];
      }
      ci[j] = acc;
    }
  }
}

__attribute__((target("avx2"))) void add_inplace_avx2(double *y, const double *x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) {
    y[i] += x[i];
  }
}
#endif

// ---- NEON ----

#if FFGATE_NEON
void mat_mul_neon(double *c, const double *a, const double *b, std::size_t r, std::size_t m,
                  std::size_t n) {
  for (std::size_t i = 0; i < r; ++i) {
    const double *ai = a + i * m;
    double *ci = c + i * n;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      float64x2_t acc = vdupq_n_f64(0.0);
      for (std::size_t k = 0; k < m; ++k) {
        float64x2_t av = vdupq_n_f64(ai[k]);
        float64x2_t bv = vld1q_f64(b + k * n + j);
        acc = vaddq_f64(acc, vmulq_f64(av, bv));
      }
      vst1q_f64(ci + j, acc);
    }
    for (; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        acc += ai[k] * b[k * n + j];
      }
      ci[j] = acc;
    }
  }
}

void add_inplace_neon(double *y, const double *x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vld1q_f64(x + i)));
  }
  for (; i < n; ++i) {
    y[i] += x[i];
  }
}
#endif

Backend detect_best() {
#if FFGATE_X86
  if (__builtin_cpu_supports("avx2")) {
    return Backend::avx2;
  }
  return Backend::scalar;
#elif FFGATE_NEON
  return Backend::neon;
#else
  return Backend::scalar;
#endif
}

Backend g_active = detect_best();

}  // namespace

const char *backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "?";
}

bool available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if FFGATE_X86
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Backend::neon:
#if FFGATE_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active() { return g_active; }

void set_active(Backend b) {
  if (!available(b)) {
    throw std::invalid_argument(std::string("kernel backend not available on this machine: ") +
                                backend_name(b));
  }
  g_active = b;
}

void mat_mul(double *c, const double *a, const double *b, std::size_t r, std::size_t m,
             std::size_t n) {
  switch (g_active) {
#if FFGATE_X86
    case Backend::avx2:
      mat_mul_avx2(c, a, b, r, m, n);
      return;
#endif
#if FFGATE_NEON
    case Backend::neon:
      mat_mul_neon(c, a, b, r, m, n);
      return;
#endif
    default:
      mat_mul_scalar(c, a, b, r, m, n);
      return;
  }
}

void add_inplace(double *y, const double *x, std::size_t n) {
  switch (g_active) {
#if FFGATE_X86
    case Backend::avx2:
      add_inplace_avx2(y, x, n);
      return;
#endif
#if FFGATE_NEON
    case Backend::neon:
      add_inplace_neon(y, x, n);
      return;
#endif
    default:
      add_inplace_scalar(y, x, n);
      return;
  }
}

}  // namespace ffgate::kernels
