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

#include "transmon/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>

#include "transmon/errors.hpp"
#include "transmon/spectrum.hpp"

namespace transmon {

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max() / 4;

// ways[s][r]: fillings of sites s..L-1 summing to r with entries <= n_max.
std::vector<std::size_t> completion_table(std::size_t L, std::size_t N, std::size_t n_max) {
  std::vector<std::size_t> w((L + 1) * (N + 1), 0);
  w[L * (N + 1) + 0] = 1;
  for (std::size_t s = L; s-- > 0;) {
    for (std::size_t r = 0; r <= N; ++r) {
      std::size_t acc = 0;
      for (std::size_t x = 0; x <= std::min(r, n_max); ++x)
        acc = std::min(kSaturated, acc + w[(s + 1) * (N + 1) + r - x]);
      w[s * (N + 1) + r] = acc;
    }
  }
  return w;
}

}  // namespace

std::size_t FockBlock::count(std::size_t sites, std::size_t excitations, std::size_t n_max) {
  if (sites == 0) throw ParameterError("block needs at least one site");
  if (n_max == 0) throw ParameterError("n_max must be >= 1");
  return completion_table(sites, excitations, n_max)[excitations];
}

FockBlock::FockBlock(std::size_t sites, std::size_t excitations, std::size_t n_max,
                     std::size_t cap)
    : sites_(sites), n_(excitations), n_max_(n_max) {
  if (sites_ == 0) throw ParameterError("block needs at least one site");
  if (n_max_ == 0) throw ParameterError("n_max must be >= 1");
  if (n_max_ > 255) throw ParameterError("n_max limited to 255");
  ways_ = completion_table(sites_, n_, n_max_);
  dim_ = ways(0, n_);
  if (dim_ == 0) throw ParameterError("no states with N = " + std::to_string(n_) +
                                      " fit L = " + std::to_string(sites_) + " sites at n_max = " +
                                      std::to_string(n_max_));
  if (dim_ > cap)
    throw CapacityError("block dimension " + (dim_ >= kSaturated ? std::string("overflow")
                                                                : std::to_string(dim_)) +
                        " exceeds cap " + std::to_string(cap));
  occ_.reserve(dim_ * sites_);
  std::vector<std::uint8_t> cur(sites_, 0);
  // depth-first, each site ascending: lexicographic order
  auto fill = [&](auto&& self, std::size_t s, std::size_t remaining) -> void {
    if (s == sites_) {
      occ_.insert(occ_.end(), cur.begin(), cur.end());
      return;
    }
    for (std::size_t x = 0; x <= std::min(remaining, n_max_); ++x) {
      if (ways(s + 1, remaining - x) == 0) continue;
      cur[s] = static_cast<std::uint8_t>(x);
      self(self, s + 1, remaining - x);
    }
    cur[s] = 0;
  };
  fill(fill, 0, n_);
}

std::size_t FockBlock::index(std::span<const std::uint8_t> occupation) const {
  if (occupation.size() != sites_) throw DimensionError("occupation vector has wrong length");
  std::size_t remaining = n_;
  std::size_t rank = 0;
  for (std::size_t s = 0; s < sites_; ++s) {
    const std::size_t v = occupation[s];
    if (v > n_max_ || v > remaining) throw DomainError("occupation outside the block");
    for (std::size_t x = 0; x < v; ++x) rank += ways(s + 1, remaining - x);
    remaining -= v;
  }
  if (remaining != 0) throw DomainError("occupation does not sum to N");
  return rank;
}

std::size_t FockBlock::index(std::span<const int> occupation) const {
  std::vector<std::uint8_t> v(occupation.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (occupation[i] < 0 || occupation[i] > 255) throw DomainError("occupation outside the block");
    v[i] = static_cast<std::uint8_t>(occupation[i]);
  }
  return index(std::span<const std::uint8_t>(v));
}

void BoseHubbardParams::validate(std::size_t sites) const {
  if (onsite.size() != sites) throw DimensionError("onsite energies do not match block sites");
  if (!(anharmonicity > 0.0)) throw ParameterError("anharmonicity must be positive");
  if (hop.size() != edges.size()) throw DimensionError("one hopping amplitude per edge required");
  for (const Edge& e : edges)
    if (e.a >= sites || e.b >= sites || e.a == e.b) throw DimensionError("edge outside the block");
}

std::vector<double> hopping_amplitudes(const ArrayParams& params) {
  const auto ej = params.e_j();
  const double scale = params.t_coupling() / std::sqrt(32.0 * params.e_c());
  std::vector<double> t;
  t.reserve(params.edges().size());
  for (const Edge& e : params.edges()) t.push_back(scale * std::pow(ej[e.a] * ej[e.b], 0.25));
  return t;
}

std::string_view onsite_model_name(OnsiteModel m) {
  return m == OnsiteModel::exact ? "exact" : "asymptotic";
}

OnsiteModel parse_onsite_model(std::string_view s) {
  if (s == "asymptotic") return OnsiteModel::asymptotic;
  if (s == "exact") return OnsiteModel::exact;
  throw ParameterError("unknown onsite model '" + std::string(s) +
                       "' (expected asymptotic or exact)");
}

BoseHubbardParams bose_hubbard_from(const ArrayParams& params, OnsiteModel onsite) {
  BoseHubbardParams bh;
  bh.anharmonicity = params.e_c();
  bh.edges.assign(params.edges().begin(), params.edges().end());
  bh.hop = hopping_amplitudes(params);
  for (double ej : params.e_j()) {
    if (onsite == OnsiteModel::asymptotic) {
      bh.onsite.push_back(std::sqrt(8.0 * params.e_c() * ej) - params.e_c());
    } else {
      bh.onsite.push_back(cached_levels(params.e_c(), ej).nu01());
    }
  }
  return bh;
}

Eigen::SparseMatrix<double> build_hamiltonian(const FockBlock& block, const BoseHubbardParams& bh) {
  const std::size_t L = block.sites();
  bh.validate(L);
  const auto dim = static_cast<Eigen::Index>(block.dim());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(block.dim() * (1 + 2 * bh.edges.size()));
  std::vector<std::uint8_t> moved(L);
  for (std::size_t k = 0; k < block.dim(); ++k) {
    const auto occ = block.state(k);
    double diag = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      const double n = occ[i];
      diag += bh.onsite[i] * n - 0.5 * bh.anharmonicity * n * (n - 1.0);
    }
    const auto row = static_cast<Eigen::Index>(k);
    trip.emplace_back(row, row, diag);
    for (std::size_t e = 0; e < bh.edges.size(); ++e) {
      if (bh.hop[e] == 0.0) continue;
      const std::size_t ends[2][2] = {{bh.edges[e].a, bh.edges[e].b}, {bh.edges[e].b, bh.edges[e].a}};
      for (const auto& [to, from] : ends) {
        // a_to^dagger a_from; moves that exceed n_max leave the block and are skipped
        if (occ[from] == 0 || occ[to] >= block.n_max()) continue;
        std::copy(occ.begin(), occ.end(), moved.begin());
        const double amp =
            bh.hop[e] * std::sqrt(static_cast<double>(occ[from]) * (occ[to] + 1.0));
        --moved[from];
        ++moved[to];
        const auto col = static_cast<Eigen::Index>(block.index(std::span<const std::uint8_t>(moved)));
        trip.emplace_back(col, row, amp);
      }
    }
  }
  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

Eigensystem diagonalize(const Eigen::SparseMatrix<double>& h, std::size_t dense_cap) {
  if (static_cast<std::size_t>(h.rows()) > dense_cap)
    throw CapacityError("dense diagonalization limited to dimension " + std::to_string(dense_cap) +
                        ", got " + std::to_string(h.rows()));
  const Eigen::MatrixXd dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) throw ConvergenceError("block eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double ipr(const Eigen::Ref<const Eigen::VectorXd>& v) { return v.array().square().square().sum(); }

double ipr(const Eigen::Ref<const Eigen::VectorXcd>& v) {
  return v.array().abs2().square().sum();
}

IprResult eigen_ipr(const Eigensystem& eig) {
  IprResult r;
  const Eigen::Index n = eig.vectors.cols();
  r.values.reserve(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    r.values.push_back(ipr(eig.vectors.col(j)));
    sum += r.values.back();
  }
  r.mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
  return r;
}

IprResult eigen_ipr(const FockBlock& block, const Eigen::SparseMatrix<double>& h,
                    std::size_t dense_cap) {
  if (static_cast<std::size_t>(h.rows()) != block.dim())
    throw DimensionError("Hamiltonian does not match the block");
  return eigen_ipr(diagonalize(h, dense_cap));
}

Eigen::VectorXcd evolve_state(const Eigensystem& eig, std::size_t fock_index, double t) {
  const Eigen::Index n = eig.vectors.rows();
  if (fock_index >= static_cast<std::size_t>(n)) throw DomainError("initial state not in block");
  const Eigen::VectorXd c = eig.vectors.row(static_cast<Eigen::Index>(fock_index)).transpose();
  Eigen::VectorXcd phased(n);
  for (Eigen::Index j = 0; j < n; ++j)
    phased[j] = c[j] * std::polar(1.0, -2.0 * kPi * eig.values[j] * t);
  return eig.vectors.cast<std::complex<double>>() * phased;
}

std::vector<double> evolve_ipr(const Eigensystem& eig, std::size_t fock_index,
                               std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(ipr(evolve_state(eig, fock_index, t)));
  return out;
}

MultipletPartition multiplet_partition(const FockBlock& block, std::span<const Sublattice> labels) {
  if (labels.size() != block.sites()) throw DimensionError("one sublattice label per site required");
  constexpr Sublattice order[] = {Sublattice::A, Sublattice::B, Sublattice::C, Sublattice::none};
  MultipletPartition p;
  p.group_of.resize(block.dim());
  std::map<std::string, std::size_t> by_name;
  for (std::size_t k = 0; k < block.dim(); ++k) {
    const auto occ = block.state(k);
    std::string name = "{";
    for (Sublattice s : order) {
      std::vector<int> vals;
      for (std::size_t i = 0; i < occ.size(); ++i)
        if (labels[i] == s && occ[i] > 0) vals.push_back(occ[i]);
      if (vals.empty()) continue;
      std::sort(vals.rbegin(), vals.rend());
      name += s == Sublattice::none ? std::string("-") : std::string(sublattice_name(s));
      for (int v : vals) name += std::to_string(v) + (v > 9 ? "," : "");
    }
    name += "}";
    const auto [it, fresh] = by_name.emplace(name, p.groups.size());
    if (fresh) {
      p.groups.emplace_back();
      p.names.push_back(name);
    }
    p.groups[it->second].push_back(k);
    p.group_of[k] = it->second;
  }
  return p;
}

std::vector<MultipletIpr> multiplet_ipr(const Eigensystem& eig, const MultipletPartition& partition) {
  const Eigen::Index n = eig.vectors.cols();
  if (static_cast<std::size_t>(eig.vectors.rows()) != partition.group_of.size())
    throw DimensionError("partition does not match the eigensystem");
  std::vector<MultipletIpr> out(partition.groups.size());
  std::vector<double> sums(partition.groups.size(), 0.0);
  for (std::size_t g = 0; g < out.size(); ++g) {
    out[g].name = partition.names[g];
    out[g].dim = partition.groups[g].size();
  }
  std::vector<double> weight(partition.groups.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    std::fill(weight.begin(), weight.end(), 0.0);
    for (Eigen::Index k = 0; k < eig.vectors.rows(); ++k)
      weight[partition.group_of[static_cast<std::size_t>(k)]] += eig.vectors(k, j) * eig.vectors(k, j);
    const auto g = static_cast<std::size_t>(
        std::distance(weight.begin(), std::max_element(weight.begin(), weight.end())));
    ++out[g].assigned;
    sums[g] += ipr(eig.vectors.col(j));
  }
  for (std::size_t g = 0; g < out.size(); ++g)
    if (out[g].assigned > 0) out[g].mean_ipr = sums[g] / static_cast<double>(out[g].assigned);
  return out;
}

std::size_t default_n_max(std::size_t excitations) {
  return std::max<std::size_t>(1, std::min<std::size_t>(excitations, 6));
}

double mean_block_ipr(const ArrayParams& params, OnsiteModel onsite) {
  const std::size_t L = params.size();
  const std::size_t N = L / 2;
  const FockBlock block(L, N, default_n_max(N));
  return eigen_ipr(diagonalize(build_hamiltonian(block, bose_hubbard_from(params, onsite)))).mean;
}

}  // namespace transmon
