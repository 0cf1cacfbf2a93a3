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

#include "transmon/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>

#include "json.hpp"

#include "transmon/errors.hpp"

namespace transmon {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view s, const std::array<std::pair<std::string_view, E>, N>& table,
             const char* what) {
  for (const auto& [name, value] : table)
    if (name == s) return value;
  std::string valid;
  for (const auto& [name, value] : table) valid += (valid.empty() ? "" : ", ") + std::string(name);
  throw ParameterError("unknown " + std::string(what) + " '" + std::string(s) + "' (expected " +
                       valid + ")");
}

constexpr std::array<std::pair<std::string_view, Sublattice>, 4> kSublattices{
    {{"none", Sublattice::none}, {"A", Sublattice::A}, {"B", Sublattice::B}, {"C", Sublattice::C}}};
constexpr std::array<std::pair<std::string_view, Geometry>, 3> kGeometries{
    {{"chain", Geometry::chain}, {"grid", Geometry::grid}, {"heavy-hex", Geometry::heavy_hex}}};
constexpr std::array<std::pair<std::string_view, Role>, 2> kRoles{
    {{"target", Role::target}, {"control", Role::control}}};
constexpr std::array<std::pair<std::string_view, PatternKind>, 3> kPatterns{
    {{"uniform", PatternKind::uniform}, {"AB", PatternKind::AB}, {"CACB", PatternKind::CACB}}};
constexpr std::array<std::pair<std::string_view, InitKind>, 5> kInits{
    {{"alternating", InitKind::alternating},
     {"high_e", InitKind::high_e},
     {"low_e", InitKind::low_e},
     {"explicit", InitKind::explicit_list},
     {"random_k", InitKind::random_k_excited}}};

template <typename E, std::size_t N>
std::string_view enum_name(E v, const std::array<std::pair<std::string_view, E>, N>& table) {
  for (const auto& [name, value] : table)
    if (value == v) return name;
  return "?";
}

bool connected(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<char> seen(n, 0);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      ++reached;
      q.push(w);
    }
  }
  return reached == n;
}

// Heavy-hex lattices drawn as horizontal rows of qubits joined by bridge
// qubits. Row k sits at y = 2k, bridges of gap k (rows k, k+1) at y = 2k + 1.
// Row qubits whose column has parity `node_parity` are the hexagon nodes.
struct Pendant {
  int row;
  int col;
  int side;  // -1 above the row, +1 below
};

struct RowLayout {
  std::vector<std::pair<int, int>> rows;  // inclusive column range per row
  std::vector<std::vector<int>> bridges;  // columns per gap
  std::vector<Pendant> pendants;
  int node_parity = 0;
};

Lattice build_rows(const std::string& name, const RowLayout& layout) {
  struct Site {
    int x, y;
    Role role;
    Sublattice sub;
  };
  std::vector<Site> sites;
  for (std::size_t k = 0; k < layout.rows.size(); ++k) {
    const auto [c0, c1] = layout.rows[k];
    for (int c = c0; c <= c1; ++c) {
      const bool node = ((c % 2) + 2) % 2 == layout.node_parity;
      const int rank = c / 2 + static_cast<int>(k);
      sites.push_back({c, 2 * static_cast<int>(k), node ? Role::target : Role::control,
                       node ? (rank % 2 == 0 ? Sublattice::A : Sublattice::B) : Sublattice::C});
    }
  }
  for (std::size_t g = 0; g < layout.bridges.size(); ++g)
    for (int c : layout.bridges[g])
      sites.push_back({c, 2 * static_cast<int>(g) + 1, Role::control, Sublattice::C});
  for (const Pendant& p : layout.pendants)
    sites.push_back({p.col, 2 * p.row + p.side, Role::control, Sublattice::C});
  std::sort(sites.begin(), sites.end(),
            [](const Site& a, const Site& b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });

  std::map<std::pair<int, int>, std::size_t> index;
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (!index.emplace(std::pair{sites[i].x, sites[i].y}, i).second)
      throw ParameterError("layout places two sites at one position");
  const auto at = [&](int x, int y) {
    const auto it = index.find({x, y});
    if (it == index.end()) throw ParameterError("layout link to a missing row site");
    return it->second;
  };
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < layout.rows.size(); ++k) {
    const int y = 2 * static_cast<int>(k);
    for (int c = layout.rows[k].first; c < layout.rows[k].second; ++c)
      edges.push_back({at(c, y), at(c + 1, y)});
  }
  for (std::size_t g = 0; g < layout.bridges.size(); ++g) {
    const int y = 2 * static_cast<int>(g) + 1;
    for (int c : layout.bridges[g]) {
      edges.push_back({at(c, y - 1), at(c, y)});
      edges.push_back({at(c, y), at(c, y + 1)});
    }
  }
  for (const Pendant& p : layout.pendants)
    edges.push_back({at(p.col, 2 * p.row), at(p.col, 2 * p.row + p.side)});

  std::vector<Role> roles;
  std::vector<Sublattice> subs;
  std::vector<std::array<int, 2>> coords;
  for (const Site& s : sites) {
    roles.push_back(s.role);
    subs.push_back(s.sub);
    coords.push_back({s.x, s.y});
  }
  return Lattice(name, Geometry::heavy_hex, std::move(edges), std::move(roles), std::move(subs),
                 std::move(coords));
}

std::vector<int> stride_columns(int first, int last, int stride) {
  std::vector<int> out;
  for (int c = first; c <= last; c += stride) out.push_back(c);
  return out;
}

// IBM-style chips: `rows` qubit rows of `width` = 4m + 3 columns; the first
// row drops its last column and the last row its first, bridges every four
// columns alternating between offsets 0 and 2.
RowLayout ibm_rows(int rows, int width) {
  RowLayout l;
  for (int k = 0; k < rows; ++k) {
    const int first = k == rows - 1 ? 1 : 0;
    const int last = k == 0 ? width - 2 : width - 1;
    l.rows.emplace_back(first, last);
  }
  for (int g = 0; g + 1 < rows; ++g) l.bridges.push_back(stride_columns(g % 2 == 0 ? 0 : 2, width - 1, 4));
  return l;
}

struct PresetRecipe {
  std::string_view name;
  std::size_t sites;
  int rows;
  int width;
};

// Trim recipes for the published chip sizes (format kPresetFormatVersion).
constexpr PresetRecipe kPresets[] = {
    {"falcon", 27, 2, 11},
    {"hummingbird", 65, 5, 11},
    {"eagle", 127, 7, 15},
    {"osprey", 433, 13, 27},
    {"condor", 1121, 21, 43},
};

RowLayout falcon_rows() {
  // two offset rows of ten, three bridges, and a stub above and below
  // the two hexagons
  RowLayout l;
  l.rows = {{0, 9}, {1, 10}};
  l.bridges = {{1, 5, 9}};
  l.pendants = {{0, 3, -1}, {0, 7, -1}, {1, 3, +1}, {1, 7, +1}};
  l.node_parity = 1;
  return l;
}

}  // namespace

std::string_view role_name(Role r) { return enum_name(r, kRoles); }
std::string_view sublattice_name(Sublattice s) { return enum_name(s, kSublattices); }
std::string_view geometry_name(Geometry g) { return enum_name(g, kGeometries); }
Sublattice parse_sublattice(std::string_view s) { return parse_enum(s, kSublattices, "sublattice"); }
Geometry parse_geometry(std::string_view s) { return parse_enum(s, kGeometries, "geometry"); }
PatternKind parse_pattern_kind(std::string_view s) { return parse_enum(s, kPatterns, "pattern"); }
InitKind parse_init_kind(std::string_view s) { return parse_enum(s, kInits, "init pattern"); }
std::string_view pattern_kind_name(PatternKind k) { return enum_name(k, kPatterns); }
std::string_view init_kind_name(InitKind k) { return enum_name(k, kInits); }

Lattice::Lattice(std::string name, Geometry geometry, std::vector<Edge> edges,
                 std::vector<Role> roles, std::vector<Sublattice> sublattice,
                 std::vector<std::array<int, 2>> coords)
    : name_(std::move(name)),
      geometry_(geometry),
      edges_(std::move(edges)),
      roles_(std::move(roles)),
      sublattice_(std::move(sublattice)),
      coords_(std::move(coords)) {
  const std::size_t n = roles_.size();
  if (n == 0) throw ParameterError("lattice needs at least one site");
  if (sublattice_.size() != n || coords_.size() != n)
    throw DimensionError("per-site label lists differ in length");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges_) {
    if (e.a >= n || e.b >= n) throw DimensionError("edge references a missing site");
    if (e.a == e.b) throw ParameterError("self-loop at site " + std::to_string(e.a));
    if (!seen.emplace(std::min(e.a, e.b), std::max(e.a, e.b)).second)
      throw ParameterError("duplicate edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                           ")");
  }
  if (!connected(n, edges_)) throw ParameterError("lattice '" + name_ + "' is not connected");
  if (geometry_ == Geometry::heavy_hex) {
    const auto deg = degrees();
    for (std::size_t i = 0; i < n; ++i) {
      if (deg[i] > 3) throw ParameterError("heavy-hex site " + std::to_string(i) + " has degree > 3");
      if (roles_[i] == Role::control && deg[i] > 2)
        throw ParameterError("control site " + std::to_string(i) + " has degree > 2");
    }
  }
}

std::vector<std::size_t> Lattice::degrees() const {
  std::vector<std::size_t> d(size(), 0);
  for (const Edge& e : edges_) {
    ++d[e.a];
    ++d[e.b];
  }
  return d;
}

std::size_t Lattice::count(Role r) const {
  return static_cast<std::size_t>(std::count(roles_.begin(), roles_.end(), r));
}

ArrayParams Lattice::params(double e_c, std::vector<double> e_j, double t_coupling) const {
  if (e_j.size() != size())
    throw DimensionError("e_j has " + std::to_string(e_j.size()) + " entries for " +
                         std::to_string(size()) + " sites");
  return ArrayParams(e_c, std::move(e_j), t_coupling, edges_);
}

Lattice chain(std::size_t L) {
  if (L == 0) throw ParameterError("chain length must be >= 1");
  std::vector<Edge> edges;
  std::vector<Sublattice> subs;
  std::vector<std::array<int, 2>> coords;
  for (std::size_t i = 0; i < L; ++i) {
    if (i + 1 < L) edges.push_back({i, i + 1});
    subs.push_back(i % 2 == 0 ? Sublattice::A : Sublattice::B);
    coords.push_back({static_cast<int>(i), 0});
  }
  return Lattice("chain" + std::to_string(L), Geometry::chain, std::move(edges),
                 std::vector<Role>(L, Role::target), std::move(subs), std::move(coords));
}

Lattice grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw ParameterError("grid dimensions must be >= 1");
  std::vector<Edge> edges;
  std::vector<Sublattice> subs;
  std::vector<std::array<int, 2>> coords;
  for (std::size_t y = 0; y < rows; ++y) {
    for (std::size_t x = 0; x < cols; ++x) {
      const std::size_t i = y * cols + x;
      if (x + 1 < cols) edges.push_back({i, i + 1});
      if (y + 1 < rows) edges.push_back({i, i + cols});
      subs.push_back((x + y) % 2 == 0 ? Sublattice::A : Sublattice::B);
      coords.push_back({static_cast<int>(x), static_cast<int>(y)});
    }
  }
  return Lattice("grid" + std::to_string(rows) + "x" + std::to_string(cols), Geometry::grid,
                 std::move(edges), std::vector<Role>(rows * cols, Role::target), std::move(subs),
                 std::move(coords));
}

Lattice heavy_hexagon(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw ParameterError("heavy-hex dimensions must be >= 1");
  if (rows > 1000 || cols > 1000) throw CapacityError("heavy-hex dimensions limited to 1000");
  const int width = 4 * static_cast<int>(cols) + 1;
  RowLayout l;
  for (std::size_t k = 0; k <= rows; ++k) l.rows.emplace_back(0, width - 1);
  for (std::size_t g = 0; g < rows; ++g)
    l.bridges.push_back(g % 2 == 0 ? stride_columns(0, width - 1, 4)
                                   : stride_columns(2, width - 3, 4));
  return build_rows("heavyhex" + std::to_string(rows) + "x" + std::to_string(cols), l);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const PresetRecipe& p : kPresets) out.emplace_back(p.name);
  return out;
}

Lattice ibm_preset(std::string_view name) {
  for (const PresetRecipe& p : kPresets) {
    if (p.name != name) continue;
    Lattice l = build_rows(std::string(p.name),
                           p.name == "falcon" ? falcon_rows() : ibm_rows(p.rows, p.width));
    if (l.size() != p.sites) throw Error("preset recipe for " + std::string(name) + " is corrupt");
    return l;
  }
  std::string valid;
  for (const PresetRecipe& p : kPresets) valid += (valid.empty() ? "" : ", ") + std::string(p.name);
  throw ParameterError("unknown preset '" + std::string(name) + "' (expected " + valid + ")");
}

std::vector<Sublattice> pattern_labels(const Lattice& lattice, PatternKind kind) {
  const std::size_t n = lattice.size();
  switch (kind) {
    case PatternKind::uniform:
      return std::vector<Sublattice>(n, Sublattice::none);
    case PatternKind::AB: {
      std::vector<Sublattice> out(lattice.sublattice().begin(), lattice.sublattice().end());
      for (Sublattice s : out)
        if (s != Sublattice::A && s != Sublattice::B)
          throw ParameterError("AB pattern needs an A/B-labelled lattice; '" + lattice.name() +
                               "' has other labels");
      return out;
    }
    case PatternKind::CACB: {
      if (lattice.geometry() == Geometry::heavy_hex)
        return {lattice.sublattice().begin(), lattice.sublattice().end()};
      if (lattice.geometry() == Geometry::chain) {
        constexpr Sublattice cycle[] = {Sublattice::C, Sublattice::A, Sublattice::C, Sublattice::B};
        std::vector<Sublattice> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = cycle[i % 4];
        return out;
      }
      throw ParameterError("CACB pattern is defined for chains and heavy-hex lattices");
    }
  }
  throw ParameterError("unknown pattern kind");
}

std::vector<double> apply_pattern(const Lattice& lattice, const PatternSpec& pattern,
                                  std::span<const double> offsets) {
  if (offsets.size() != lattice.size())
    throw DimensionError("offsets length " + std::to_string(offsets.size()) + " != " +
                         std::to_string(lattice.size()) + " sites");
  const auto labels = pattern_labels(lattice, pattern.kind);
  std::vector<double> ej(lattice.size());
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const auto it = pattern.base_ej.find(labels[i]);
    if (it == pattern.base_ej.end())
      throw ParameterError("missing base E_J for sublattice " +
                           std::string(sublattice_name(labels[i])));
    ej[i] = it->second + offsets[i];
  }
  return ej;
}

std::vector<int> initial_pattern(const Lattice& lattice, const InitSpec& spec) {
  const std::size_t n = lattice.size();
  std::vector<int> out(n, 0);
  switch (spec.kind) {
    case InitKind::alternating:
      for (std::size_t i = 0; i < n; i += 2) out[i] = 1;
      break;
    case InitKind::high_e:
    case InitKind::low_e: {
      const Role excited = spec.kind == InitKind::high_e ? Role::control : Role::target;
      for (std::size_t i = 0; i < n; ++i) out[i] = lattice.roles()[i] == excited ? 1 : 0;
      break;
    }
    case InitKind::explicit_list:
      if (spec.levels.size() != n)
        throw DimensionError("explicit pattern has " + std::to_string(spec.levels.size()) +
                             " entries for " + std::to_string(n) + " sites");
      for (int v : spec.levels)
        if (v < 0) throw ParameterError("level indices must be >= 0");
      out = spec.levels;
      break;
    case InitKind::random_k_excited: {
      if (spec.k > n) throw ParameterError("cannot excite more sites than the lattice has");
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::seed_seq seq{spec.seed};
      std::mt19937_64 rng(seq);
      // partial Fisher-Yates
      for (std::size_t i = 0; i < spec.k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
        out[idx[i]] = 1;
      }
      break;
    }
  }
  return out;
}

std::string lattice_to_json(const Lattice& lattice) {
  nlohmann::ordered_json doc;
  doc["format_version"] = kLatticeFormatVersion;
  doc["name"] = lattice.name();
  doc["geometry"] = geometry_name(lattice.geometry());
  doc["n_sites"] = lattice.size();
  auto& sites = doc["sites"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    sites.push_back({{"index", i},
                     {"role", role_name(lattice.roles()[i])},
                     {"sublattice", sublattice_name(lattice.sublattice()[i])},
                     {"x", lattice.coords()[i][0]},
                     {"y", lattice.coords()[i][1]}});
  }
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : lattice.edges()) edges.push_back({e.a, e.b});
  return doc.dump(2) + "\n";
}

Lattice lattice_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("lattice JSON: ") + e.what());
  }
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kLatticeFormatVersion)
      throw ParameterError("lattice JSON format_version " + std::to_string(version) +
                           " unsupported (expected " + std::to_string(kLatticeFormatVersion) + ")");
    const auto& sites = doc.at("sites");
    const std::size_t n = doc.at("n_sites").get<std::size_t>();
    if (sites.size() != n) throw DimensionError("lattice JSON: n_sites disagrees with sites");
    std::vector<Role> roles(n);
    std::vector<Sublattice> subs(n);
    std::vector<std::array<int, 2>> coords(n);
    std::vector<char> filled(n, 0);
    for (const auto& s : sites) {
      const std::size_t i = s.at("index").get<std::size_t>();
      if (i >= n || filled[i]) throw ParameterError("lattice JSON: bad or repeated site index");
      filled[i] = 1;
      roles[i] = parse_enum(s.at("role").get<std::string>(), kRoles, "role");
      subs[i] = parse_sublattice(s.at("sublattice").get<std::string>());
      coords[i] = {s.at("x").get<int>(), s.at("y").get<int>()};
    }
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParameterError("lattice JSON: edge must be a pair");
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
    }
    return Lattice(doc.at("name").get<std::string>(),
                   parse_geometry(doc.at("geometry").get<std::string>()), std::move(edges),
                   std::move(roles), std::move(subs), std::move(coords));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("lattice JSON: ") + e.what());
  }
}

}  // namespace transmon
