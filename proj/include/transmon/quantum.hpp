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

#ifndef TRANSMON_QUANTUM_HPP
#define TRANSMON_QUANTUM_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "transmon/lattice.hpp"
#include "transmon/model.hpp"

namespace transmon {

inline constexpr std::size_t kDefaultBlockCap = 200000;
inline constexpr std::size_t kDefaultDenseCap = 20000;

/// Occupation vectors of L bosonic sites with total N and at most n_max per
/// site, in ascending lexicographic order.
class FockBlock {
 public:
  FockBlock(std::size_t sites, std::size_t excitations, std::size_t n_max,
            std::size_t cap = kDefaultBlockCap);

  std::size_t sites() const noexcept { return sites_; }
  std::size_t excitations() const noexcept { return n_; }
  std::size_t n_max() const noexcept { return n_max_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const std::uint8_t> state(std::size_t k) const {
    return {occ_.data() + k * sites_, sites_};
  }
  /// Position of an occupation vector; throws DomainError if it is not in
  /// the block.
  std::size_t index(std::span<const std::uint8_t> occupation) const;
  std::size_t index(std::span<const int> occupation) const;

  /// Number of states in blocks with these parameters, without building one.
  static std::size_t count(std::size_t sites, std::size_t excitations, std::size_t n_max);

 private:
  std::size_t ways(std::size_t from_site, std::size_t remaining) const {
    return ways_[from_site * (n_ + 1) + remaining];
  }

  std::size_t sites_;
  std::size_t n_;
  std::size_t n_max_;
  std::size_t dim_;
  std::vector<std::size_t> ways_;  // completions of sites [s, L) with a given total
  std::vector<std::uint8_t> occ_;
};

struct BoseHubbardParams {
  std::vector<double> onsite;   // nu_i, GHz
  double anharmonicity = 0.0;   // E_C, GHz; enters as -E_C/2 n (n - 1)
  std::vector<Edge> edges;
  std::vector<double> hop;      // t_ij per edge, GHz

  void validate(std::size_t sites) const;
};

/// t_ij = T (E_J,i E_J,j)^(1/4) / sqrt(32 E_C), one per edge.
std::vector<double> hopping_amplitudes(const ArrayParams& params);

enum class OnsiteModel { asymptotic, exact };
std::string_view onsite_model_name(OnsiteModel m);
OnsiteModel parse_onsite_model(std::string_view s);

/// nu_i = sqrt(8 E_C E_J,i) - E_C, or E_1 - E_0 of the single-transmon spectrum.
BoseHubbardParams bose_hubbard_from(const ArrayParams& params,
                                    OnsiteModel onsite = OnsiteModel::asymptotic);

/// Hermitian (real symmetric) block Hamiltonian.
Eigen::SparseMatrix<double> build_hamiltonian(const FockBlock& block, const BoseHubbardParams& bh);

struct Eigensystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, Fock-basis amplitudes
};

Eigensystem diagonalize(const Eigen::SparseMatrix<double>& h,
                        std::size_t dense_cap = kDefaultDenseCap);

/// sum_k |v_k|^4 of one amplitude vector.
double ipr(const Eigen::Ref<const Eigen::VectorXd>& v);
double ipr(const Eigen::Ref<const Eigen::VectorXcd>& v);

struct IprResult {
  std::vector<double> values;  // per eigenstate, ascending energy
  double mean = 0.0;
};

IprResult eigen_ipr(const Eigensystem& eig);
IprResult eigen_ipr(const FockBlock& block, const Eigen::SparseMatrix<double>& h,
                    std::size_t dense_cap = kDefaultDenseCap);

/// exp(-i 2 pi H t) psi0 for a Fock initial state (GHz energies, ns times).
Eigen::VectorXcd evolve_state(const Eigensystem& eig, std::size_t fock_index, double t);
std::vector<double> evolve_ipr(const Eigensystem& eig, std::size_t fock_index,
                               std::span<const double> times);

struct MultipletPartition {
  std::vector<std::vector<std::size_t>> groups;  // basis indices, in order of first appearance
  std::vector<std::size_t> group_of;             // per basis index
  std::vector<std::string> names;                // e.g. "{A11B111}"
};

/// Groups Fock states by their sorted occupation lists on each sublattice.
MultipletPartition multiplet_partition(const FockBlock& block, std::span<const Sublattice> labels);

struct MultipletIpr {
  std::string name;
  std::size_t dim = 0;
  std::size_t assigned = 0;         // eigenstates whose largest weight lies here
  std::optional<double> mean_ipr;   // empty when nothing is assigned
};

/// Assigns each eigenstate to the multiplet holding its largest total weight.
std::vector<MultipletIpr> multiplet_ipr(const Eigensystem& eig,
                                        const MultipletPartition& partition);

/// Default per-site cap: min(N, 6).
std::size_t default_n_max(std::size_t excitations);

/// Mean eigenstate IPR of the N = L/2 block of the Bose-Hubbard model that
/// approximates params.
double mean_block_ipr(const ArrayParams& params, OnsiteModel onsite = OnsiteModel::asymptotic);

}  // namespace transmon

#endif  // TRANSMON_QUANTUM_HPP
