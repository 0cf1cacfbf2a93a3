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

#ifndef TRANSMON_SIMD_KERNELS_HPP
#define TRANSMON_SIMD_KERNELS_HPP

#include <cstddef>
#include <span>
#include <string_view>

namespace transmon::simd {

// Inner loops of the classical solver. Every entry has a scalar reference
// implementation; vector variants must agree with it to a few ulps (they may
// use FMA contraction and a polynomial sin/cos).
struct KernelTable {
  std::string_view name;

  // out[i] = base[i] + h * sum_s coeffs[s] * stages[s][i].
  // An empty base means zero. Stages with a zero coefficient are skipped.
  void (*combine)(std::span<double> out, std::span<const double> base, double h,
                  std::span<const double> coeffs,
                  std::span<const double* const> stages);

  // sum_i (err[i] / (atol + rtol * max(|y0[i]|, |y1[i]|)))^2
  double (*scaled_sq_norm)(std::span<const double> err, std::span<const double> y0,
                           std::span<const double> y1, double atol, double rtol);

  // Hamilton's equations of the transmon array, given the precomputed
  // neighbor sums nbr[i] = sum_{j in NN(i)} n[j]:
  //   dphi[i] = eight_ec * n[i] + t * nbr[i],   dn[i] = -ej[i] * sin(phi[i]).
  void (*pendulum_rhs)(std::span<const double> phi, std::span<const double> n,
                       std::span<const double> nbr, std::span<const double> ej,
                       double eight_ec, double t, std::span<double> dphi,
                       std::span<double> dn);

  // out[i] = -ej[i] * cos(phi[i]); the diagonal of the d(ndot)/d(phi) block.
  void (*neg_ej_cos)(std::span<const double> phi, std::span<const double> ej,
                     std::span<double> out);

  // s[i] = sin(x[i]), c[i] = cos(x[i]).
  void (*sincos)(std::span<const double> x, std::span<double> s, std::span<double> c);
};

const KernelTable& scalar_kernels();

/// Returns nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();

/// The table used by default: AVX2 when available, overridable through the
/// TRANSMON_KERNELS environment variable ("scalar" or "avx2").
const KernelTable& active_kernels();

}  // namespace transmon::simd

#endif  // TRANSMON_SIMD_KERNELS_HPP
