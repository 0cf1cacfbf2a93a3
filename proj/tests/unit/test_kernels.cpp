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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "transmon/simd/kernels.hpp"

namespace transmon::simd {
namespace {

const KernelTable* vector_table() { return avx2_kernels(); }

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// difference in units of the larger magnitude's ulp, with an absolute floor
// for results near zero
double ulp_distance(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / (scale * 2.220446049250313e-16);
}

TEST(Kernels, ScalarIsAlwaysAvailable) { EXPECT_EQ(scalar_kernels().name, "scalar"); }

TEST(Kernels, EnvironmentCanForceScalar) {
  // the selection is latched at first use; only check that it is one of the two
  const auto name = active_kernels().name;
  EXPECT_TRUE(name == "scalar" || name == "avx2");
}

TEST(KernelEquivalence, SinCosOverWideRange) {
  const KernelTable* vec = vector_table();
  if (vec == nullptr) GTEST_SKIP() << "no vector kernels on this machine";
  std::mt19937_64 rng(1);
  for (double range : {1.0, 10.0, 1e3, 1e5, 1e7}) {
    auto x = uniform(rng, 1003, -range, range);
    std::vector<double> s0(x.size()), c0(x.size()), s1(x.size()), c1(x.size());
    scalar_kernels().sincos(x, s0, c0);
    vec->sincos(x, s1, c1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_NEAR(s1[i], s0[i], 4e-16) << "x=" << x[i];
      EXPECT_NEAR(c1[i], c0[i], 4e-16) << "x=" << x[i];
    }
  }
}

TEST(KernelEquivalence, SinCosSpecialPoints) {
  const KernelTable* vec = vector_table();
  if (vec == nullptr) GTEST_SKIP();
  const double pi = 3.14159265358979323846;
  std::vector<double> x{0.0, -0.0, pi / 4, pi / 2, pi, -pi, 3 * pi / 2, 2 * pi, 1e-300, -1e-8, 0.5,
                        100 * pi};
  std::vector<double> s(x.size()), c(x.size());
  vec->sincos(x, s, c);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(s[i], std::sin(x[i]), 4e-16);
    EXPECT_NEAR(c[i], std::cos(x[i]), 4e-16);
  }
}

TEST(KernelEquivalence, PendulumRhsAllTailLengths) {
  const KernelTable* vec = vector_table();
  if (vec == nullptr) GTEST_SKIP();
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 37; ++n) {
    auto phi = uniform(rng, n, -40.0, 40.0);
    auto mom = uniform(rng, n, -5.0, 5.0);
    auto nbr = uniform(rng, n, -10.0, 10.0);
    auto ej = uniform(rng, n, 5.0, 20.0);
    std::vector<double> a1(n), b1(n), a2(n), b2(n);
    scalar_kernels().pendulum_rhs(phi, mom, nbr, ej, 2.0, 0.03, a1, b1);
    vec->pendulum_rhs(phi, mom, nbr, ej, 2.0, 0.03, a2, b2);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LE(ulp_distance(a1[i], a2[i]), 2.0);
      EXPECT_NEAR(b1[i], b2[i], 1e-14);
    }
    std::vector<double> c1(n), c2(n);
    scalar_kernels().neg_ej_cos(phi, ej, c1);
    vec->neg_ej_cos(phi, ej, c2);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(c1[i], c2[i], 1e-14);
  }
}

TEST(KernelEquivalence, CombineAndNorm) {
  const KernelTable* vec = vector_table();
  if (vec == nullptr) GTEST_SKIP();
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 64u, 1001u}) {
    std::vector<std::vector<double>> stages;
    std::vector<const double*> ptr;
    for (int s = 0; s < 12; ++s) {
      stages.push_back(uniform(rng, n, -3.0, 3.0));
      ptr.push_back(stages.back().data());
    }
    auto coeffs = uniform(rng, 12, -40.0, 40.0);
    coeffs[3] = 0.0;
    auto base = uniform(rng, n, -1.0, 1.0);
    std::vector<double> o1(n), o2(n);
    scalar_kernels().combine(o1, base, 0.013, coeffs, ptr);
    vec->combine(o2, base, 0.013, coeffs, ptr);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(o1[i], o2[i], 1e-13);
    scalar_kernels().combine(o1, {}, 0.5, coeffs, ptr);
    vec->combine(o2, {}, 0.5, coeffs, ptr);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(o1[i], o2[i], 1e-12);

    auto err = uniform(rng, n, -1e-8, 1e-8);
    const double r1 = scalar_kernels().scaled_sq_norm(err, base, o1, 1e-8, 1e-8);
    const double r2 = vec->scaled_sq_norm(err, base, o1, 1e-8, 1e-8);
    EXPECT_NEAR(r1, r2, 1e-13 * r1);
  }
}

TEST(KernelEquivalence, CombineInPlace) {
  const KernelTable* vec = vector_table();
  if (vec == nullptr) GTEST_SKIP();
  std::mt19937_64 rng(4);
  auto a = uniform(rng, 13, -1.0, 1.0);
  auto k = uniform(rng, 13, -1.0, 1.0);
  auto b = a;
  const std::vector<const double*> stage{k.data()};
  const std::vector<double> c{2.0};
  scalar_kernels().combine(a, a, 0.1, c, stage);
  vec->combine(b, b, 0.1, c, stage);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
}

}  // namespace
}  // namespace transmon::simd
