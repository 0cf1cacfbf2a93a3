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

#ifndef TRANSMON_LATTICE_HPP
#define TRANSMON_LATTICE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "transmon/model.hpp"

namespace transmon {

enum class Role { target, control };
enum class Sublattice { none, A, B, C };
enum class Geometry { chain, grid, heavy_hex };

std::string_view role_name(Role r);
std::string_view sublattice_name(Sublattice s);
std::string_view geometry_name(Geometry g);
Sublattice parse_sublattice(std::string_view s);
Geometry parse_geometry(std::string_view s);

/// Site graph with per-site labels. Sites are numbered in canonical
/// (row-major over generator coordinates) order. Validated on construction:
/// connected, no self-loops or duplicate edges, heavy-hex degrees <= 3.
class Lattice {
 public:
  Lattice(std::string name, Geometry geometry, std::vector<Edge> edges, std::vector<Role> roles,
          std::vector<Sublattice> sublattice, std::vector<std::array<int, 2>> coords);

  const std::string& name() const noexcept { return name_; }
  Geometry geometry() const noexcept { return geometry_; }
  std::size_t size() const noexcept { return roles_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Role> roles() const noexcept { return roles_; }
  std::span<const Sublattice> sublattice() const noexcept { return sublattice_; }
  /// (x, y) generator coordinates, used for ordering and export.
  std::span<const std::array<int, 2>> coords() const noexcept { return coords_; }

  std::vector<std::size_t> degrees() const;
  std::size_t count(Role r) const;

  ArrayParams params(double e_c, std::vector<double> e_j, double t_coupling) const;

 private:
  std::string name_;
  Geometry geometry_;
  std::vector<Edge> edges_;
  std::vector<Role> roles_;
  std::vector<Sublattice> sublattice_;
  std::vector<std::array<int, 2>> coords_;
};

/// Path graph; all sites targets, sublattices A, B, A, ... from site 0.
Lattice chain(std::size_t L);

/// rows x cols square grid; checkerboard A/B with A where x + y is even.
Lattice grid(std::size_t rows, std::size_t cols);

/// Hexagonal node lattice of rows x cols cells in brick-wall layout with a
/// control site on every edge. Nodes are targets split into A/B, controls C.
Lattice heavy_hexagon(std::size_t rows, std::size_t cols);

inline constexpr int kPresetFormatVersion = 1;
std::vector<std::string> preset_names();
/// falcon, hummingbird, eagle, osprey, condor.
Lattice ibm_preset(std::string_view name);

enum class PatternKind { uniform, AB, CACB };
PatternKind parse_pattern_kind(std::string_view s);
std::string_view pattern_kind_name(PatternKind k);

struct PatternSpec {
  PatternKind kind = PatternKind::uniform;
  /// Base E_J per sublattice (GHz); the uniform pattern reads Sublattice::none.
  std::map<Sublattice, double> base_ej;
};

/// Sublattice each site takes under a pattern. Chains realize C-A-C-B by
/// position; heavy-hex lattices use their own labels.
std::vector<Sublattice> pattern_labels(const Lattice& lattice, PatternKind kind);

/// E_J,i = base of the site's sublattice + offset_i.
std::vector<double> apply_pattern(const Lattice& lattice, const PatternSpec& pattern,
                                  std::span<const double> offsets);

enum class InitKind { alternating, high_e, low_e, explicit_list, random_k_excited };
InitKind parse_init_kind(std::string_view s);
std::string_view init_kind_name(InitKind k);

struct InitSpec {
  InitKind kind = InitKind::alternating;
  std::vector<int> levels;  // explicit_list
  std::size_t k = 0;        // random_k_excited
  std::uint64_t seed = 0;   // random_k_excited
};

/// Per-site level indices in canonical order.
std::vector<int> initial_pattern(const Lattice& lattice, const InitSpec& spec);

inline constexpr int kLatticeFormatVersion = 1;
std::string lattice_to_json(const Lattice& lattice);
Lattice lattice_from_json(std::string_view text);

}  // namespace transmon

#endif  // TRANSMON_LATTICE_HPP
