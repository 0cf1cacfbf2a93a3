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

// Brute-force Bose-Hubbard reference: the full truncated tensor-product space
// built from Kronecker products of single-site ladder operators, projected
// onto fixed total number only at the end. Shares no code with the library.

#ifndef TRANSMON_TESTS_BOSE_HUBBARD_ORACLE_HPP
#define TRANSMON_TESTS_BOSE_HUBBARD_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace transmon::oracle {

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Annihilator on site `site` of `sites` truncated oscillators of `levels` states.
inline Eigen::MatrixXd annihilator(std::size_t site, std::size_t sites, std::size_t levels) {
  const auto d = static_cast<Eigen::Index>(levels);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (std::size_t s = 0; s < sites; ++s)
    out = kron(out, s == site ? a : Eigen::MatrixXd::Identity(d, d));
  return out;
}

struct Edge2 {
  std::size_t a, b;
};

// (eigenvalue, IPR) pairs of the fixed-N sector, ascending in energy.
inline std::vector<std::pair<double, double>> eigen_ipr(std::size_t sites, std::size_t total,
                                                        std::size_t n_max,
                                                        const std::vector<double>& nu, double e_c,
                                                        const std::vector<Edge2>& edges,
                                                        const std::vector<double>& hop) {
  const std::size_t levels = n_max + 1;
  std::vector<Eigen::MatrixXd> a;
  for (std::size_t s = 0; s < sites; ++s) a.push_back(annihilator(s, sites, levels));
  const Eigen::Index dim = a[0].rows();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd number = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t s = 0; s < sites; ++s) {
    const Eigen::MatrixXd n = a[s].transpose() * a[s];
    h += nu[s] * n - 0.5 * e_c * (n * n - n);
    number += n;
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Eigen::MatrixXd hopping = a[edges[e].a].transpose() * a[edges[e].b];
    h += hop[e] * (hopping + hopping.transpose());
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < dim; ++i)
    if (std::abs(number(i, i) - static_cast<double>(total)) < 0.5) keep.push_back(i);
  const auto m = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd sector(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) sector(i, j) = h(keep[i], keep[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector);
  std::vector<std::pair<double, double>> out;
  for (Eigen::Index j = 0; j < m; ++j) {
    double p = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) p += std::pow(solver.eigenvectors()(k, j), 4);
    out.emplace_back(solver.eigenvalues()[j], p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace transmon::oracle

#endif  // TRANSMON_TESTS_BOSE_HUBBARD_ORACLE_HPP
