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

#include <algorithm>
#include <cmath>

#include "transmon/simd/kernels.hpp"

namespace transmon::simd {
namespace {

void combine(std::span<double> out, std::span<const double> base, double h,
             std::span<const double> coeffs, std::span<const double* const> stages) {
  const std::size_t n = out.size();
  if (base.empty()) {
    std::fill(out.begin(), out.end(), 0.0);
  } else if (base.data() != out.data()) {
    std::copy(base.begin(), base.end(), out.begin());
  }
  for (std::size_t s = 0; s < coeffs.size(); ++s) {
    if (coeffs[s] == 0.0) continue;
    const double w = h * coeffs[s];
    const double* k = stages[s];
    for (std::size_t i = 0; i < n; ++i) out[i] += w * k[i];
  }
}

double scaled_sq_norm(std::span<const double> err, std::span<const double> y0,
                      std::span<const double> y1, double atol, double rtol) {
  double acc = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / sc;
    acc += r * r;
  }
  return acc;
}

void pendulum_rhs(std::span<const double> phi, std::span<const double> n,
                  std::span<const double> nbr, std::span<const double> ej, double eight_ec,
                  double t, std::span<double> dphi, std::span<double> dn) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    dphi[i] = eight_ec * n[i] + t * nbr[i];
    dn[i] = -ej[i] * std::sin(phi[i]);
  }
}

void neg_ej_cos(std::span<const double> phi, std::span<const double> ej, std::span<double> out) {
  for (std::size_t i = 0; i < phi.size(); ++i) out[i] = -ej[i] * std::cos(phi[i]);
}

void sincos(std::span<const double> x, std::span<double> s, std::span<double> c) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &combine, &scaled_sq_norm, &pendulum_rhs,
                                 &neg_ej_cos, &sincos};
  return table;
}

}  // namespace transmon::simd
