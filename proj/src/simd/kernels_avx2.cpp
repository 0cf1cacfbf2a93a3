// Copyright 2026 The Transmon Chaos Authors
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

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma;
// nothing in it may be called unless the CPU check in dispatch.cpp passed.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "transmon/simd/kernels.hpp"

namespace transmon::simd {
namespace {

// pi/2 split into a 33-bit head, a 33-bit middle and a tail (fdlibm values),
// so that q * head and q * middle are exact for |q| < 2^20.
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624879595063154e-21;
constexpr double kTwoOverPi = 0.63661977236758134308;

// Taylor coefficients, exact to double precision on |r| <= pi/4.
constexpr double kSin[] = {-1.0 / 6.0,
                           1.0 / 120.0,
                           -1.0 / 5040.0,
                           1.0 / 362880.0,
                           -1.0 / 39916800.0,
                           1.0 / 6227020800.0,
                           -1.0 / 1307674368000.0,
                           1.0 / 355687428096000.0};
constexpr double kCos[] = {1.0 / 24.0,
                           -1.0 / 720.0,
                           1.0 / 40320.0,
                           -1.0 / 3628800.0,
                           1.0 / 479001600.0,
                           -1.0 / 87178291200.0,
                           1.0 / 20922789888000.0,
                           -1.0 / 6402373705728000.0};

inline __m256d poly(__m256d x, const double* c, int n) {
  __m256d acc = _mm256_set1_pd(c[n - 1]);
  for (int i = n - 2; i >= 0; --i) acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(c[i]));
  return acc;
}

inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d q =
      _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Mid), r);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);

  const __m256d r2 = _mm256_mul_pd(r, r);
  const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, r2), poly(r2, kSin, 8), r);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d cos_r =
      _mm256_fmadd_pd(_mm256_mul_pd(r2, r2), poly(r2, kCos, 8), _mm256_fnmadd_pd(half, r2, one));

  // quadrant = q mod 4 in {0, 1, 2, 3}
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d quad = _mm256_sub_pd(
      q, _mm256_mul_pd(four, _mm256_floor_pd(_mm256_mul_pd(q, _mm256_set1_pd(0.25)))));
  const __m256d odd = _mm256_cmp_pd(
      _mm256_sub_pd(quad, _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_floor_pd(_mm256_mul_pd(quad, half)))),
      one, _CMP_EQ_OQ);
  const __m256d sin_neg = _mm256_cmp_pd(quad, _mm256_set1_pd(1.5), _CMP_GT_OQ);
  const __m256d cos_neg = _mm256_and_pd(_mm256_cmp_pd(quad, half, _CMP_GT_OQ),
                                        _mm256_cmp_pd(quad, _mm256_set1_pd(2.5), _CMP_LT_OQ));
  const __m256d sign_bit = _mm256_set1_pd(-0.0);

  __m256d s = _mm256_blendv_pd(sin_r, cos_r, odd);
  __m256d c = _mm256_blendv_pd(cos_r, sin_r, odd);
  s_out = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign_bit));
  c_out = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign_bit));
}

// Beyond this the 33-bit splits of pi/2 stop being exact; such lanes go
// through libm instead.
constexpr double kReductionLimit = 1.0e5;

inline void sincos4_checked(const double* x, __m256d& s_out, __m256d& c_out) {
  const __m256d v = _mm256_loadu_pd(x);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d big =
      _mm256_cmp_pd(_mm256_and_pd(v, abs_mask), _mm256_set1_pd(kReductionLimit), _CMP_NLE_UQ);
  if (_mm256_movemask_pd(big) == 0) {
    sincos4(v, s_out, c_out);
    return;
  }
  alignas(32) double s[4], c[4];
  for (int k = 0; k < 4; ++k) {
    s[k] = std::sin(x[k]);
    c[k] = std::cos(x[k]);
  }
  s_out = _mm256_load_pd(s);
  c_out = _mm256_load_pd(c);
}

void combine(std::span<double> out, std::span<const double> base, double h,
             std::span<const double> coeffs, std::span<const double* const> stages) {
  const std::size_t n = out.size();
  double weights[16];
  const double* active[16];
  std::size_t m = 0;
  for (std::size_t s = 0; s < coeffs.size(); ++s) {
    if (coeffs[s] == 0.0) continue;
    weights[m] = h * coeffs[s];
    active[m] = stages[s];
    ++m;
  }
  const double* b = base.empty() ? nullptr : base.data();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = b ? _mm256_loadu_pd(b + i) : _mm256_setzero_pd();
    for (std::size_t s = 0; s < m; ++s)
      acc = _mm256_fmadd_pd(_mm256_set1_pd(weights[s]), _mm256_loadu_pd(active[s] + i), acc);
    _mm256_storeu_pd(out.data() + i, acc);
  }
  for (; i < n; ++i) {
    double acc = b ? b[i] : 0.0;
    for (std::size_t s = 0; s < m; ++s) acc = std::fma(weights[s], active[s][i], acc);
    out[i] = acc;
  }
}

double scaled_sq_norm(std::span<const double> err, std::span<const double> y0,
                      std::span<const double> y1, double atol, double rtol) {
  const std::size_t n = err.size();
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d va = _mm256_set1_pd(atol);
  const __m256d vr = _mm256_set1_pd(rtol);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m = _mm256_max_pd(_mm256_and_pd(_mm256_loadu_pd(y0.data() + i), abs_mask),
                                    _mm256_and_pd(_mm256_loadu_pd(y1.data() + i), abs_mask));
    const __m256d sc = _mm256_fmadd_pd(vr, m, va);
    const __m256d q = _mm256_div_pd(_mm256_loadu_pd(err.data() + i), sc);
    acc = _mm256_fmadd_pd(q, q, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / sc;
    total += q * q;
  }
  return total;
}

void pendulum_rhs(std::span<const double> phi, std::span<const double> n,
                  std::span<const double> nbr, std::span<const double> ej, double eight_ec,
                  double t, std::span<double> dphi, std::span<double> dn) {
  const std::size_t L = phi.size();
  const __m256d v8ec = _mm256_set1_pd(eight_ec);
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= L; i += 4) {
    const __m256d vn = _mm256_loadu_pd(n.data() + i);
    const __m256d vnbr = _mm256_loadu_pd(nbr.data() + i);
    _mm256_storeu_pd(dphi.data() + i, _mm256_fmadd_pd(vt, vnbr, _mm256_mul_pd(v8ec, vn)));
    __m256d s, c;
    sincos4_checked(phi.data() + i, s, c);
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(ej.data() + i), s);
    _mm256_storeu_pd(dn.data() + i, _mm256_xor_pd(prod, sign_bit));
  }
  if (i < L) {
    // pad the tail into one more vector
    alignas(32) double p[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double out[4];
    for (std::size_t k = i; k < L; ++k) p[k - i] = phi[k];
    __m256d s, c;
    sincos4_checked(p, s, c);
    _mm256_store_pd(out, s);
    for (std::size_t k = i; k < L; ++k) {
      dphi[k] = std::fma(t, nbr[k], eight_ec * n[k]);
      dn[k] = -(ej[k] * out[k - i]);
    }
  }
}

void neg_ej_cos(std::span<const double> phi, std::span<const double> ej, std::span<double> out) {
  const std::size_t L = phi.size();
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= L; i += 4) {
    __m256d s, c;
    sincos4_checked(phi.data() + i, s, c);
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(ej.data() + i), c);
    _mm256_storeu_pd(out.data() + i, _mm256_xor_pd(prod, sign_bit));
  }
  if (i < L) {
    alignas(32) double p[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double cv[4];
    for (std::size_t k = i; k < L; ++k) p[k - i] = phi[k];
    __m256d s, c;
    sincos4_checked(p, s, c);
    _mm256_store_pd(cv, c);
    for (std::size_t k = i; k < L; ++k) out[k] = -(ej[k] * cv[k - i]);
  }
}

void sincos(std::span<const double> x, std::span<double> s_out, std::span<double> c_out) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s, c;
    sincos4_checked(x.data() + i, s, c);
    _mm256_storeu_pd(s_out.data() + i, s);
    _mm256_storeu_pd(c_out.data() + i, c);
  }
  for (; i < n; ++i) {
    s_out[i] = std::sin(x[i]);
    c_out[i] = std::cos(x[i]);
  }
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", &combine, &scaled_sq_norm, &pendulum_rhs,
                                 &neg_ej_cos, &sincos};
  return table;
}

}  // namespace transmon::simd
