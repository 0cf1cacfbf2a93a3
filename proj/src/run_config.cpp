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

#include "transmon/run_config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include "json.hpp"
#include "transmon/errors.hpp"

namespace transmon {

namespace {

using json = nlohmann::ordered_json;

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParameterError("not a number: '" + std::string(s) + "'");
  return v;
}

// Walks a JSON object and remembers which keys were read, so leftovers can
// be reported as unknown.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ParameterError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  template <class T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    try {
      out = raw(key).get<T>();
    } catch (const json::exception& e) {
      throw ParameterError(path_ + "." + key + ": " + e.what());
    }
  }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number()) throw ParameterError(path_ + "." + key + ": expected a number");
    out = v.get<double>();
  }

  Reader child(const std::string& key) { return Reader(raw(key), path_ + "." + key); }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) throw ParameterError(path_ + "." + key + ": unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json disorder_json(const DisorderSpec& d) {
  json j;
  j["mean_ej_GHz"] = d.mean_ej;
  j["c"] = d.c;
  j["e_c_GHz"] = d.e_c;
  j["master_seed"] = d.master_seed;
  j["spread_override_GHz"] = d.spread_override ? json(*d.spread_override) : json(nullptr);
  return j;
}

}  // namespace

std::vector<double> parse_sweep(std::string_view text) {
  if (text.empty()) throw ParameterError("empty sweep");
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos)
      throw ParameterError("sweep '" + std::string(text) + "' must read start:stop:count");
    const double start = parse_number(text.substr(0, a));
    const double stop = parse_number(text.substr(a + 1, b - a - 1));
    const double count = parse_number(text.substr(b + 1));
    if (!(count >= 1.0) || count != std::floor(count))
      throw ParameterError("sweep count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    if (n == 1) {
      if (start != stop) throw ParameterError("a one-point sweep needs start == stop");
      return {start};
    }
    for (std::size_t k = 0; k < n; ++k)
      out.push_back(k + 1 == n ? stop
                               : start + (stop - start) * static_cast<double>(k) /
                                             static_cast<double>(n - 1));
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_number(text.substr(pos, end - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

void EnsembleRun::validate() const {
  if (ej_values.empty()) throw ParameterError("E_J sweep is empty");
  if (c_values.empty()) throw ParameterError("c sweep is empty");
  for (const EnsembleConfig& b : blocks()) b.validate();
}

std::vector<EnsembleConfig> EnsembleRun::blocks() const {
  std::vector<EnsembleConfig> out;
  for (double ej : ej_values)
    for (double c : c_values) {
      EnsembleConfig b = base;
      b.disorder.mean_ej = ej;
      b.disorder.c = c;
      out.push_back(std::move(b));
    }
  return out;
}

std::string run_to_json(const EnsembleRun& run, int indent) {
  const EnsembleConfig& c = run.base;
  json j;
  j["config_version"] = kRunConfigVersion;
  j["lattice"] = json::parse(lattice_to_json(c.lattice));

  json pattern;
  pattern["kind"] = pattern_kind_name(c.pattern.kind);
  json base = json::object();
  for (const auto& [label, value] : c.pattern.base_ej) base[std::string(sublattice_name(label))] = value;
  pattern["base_ej_GHz"] = base;
  j["pattern"] = pattern;

  json init;
  init["kind"] = init_kind_name(c.init.kind);
  init["levels"] = c.init.levels;
  init["k"] = c.init.k;
  init["seed"] = c.init.seed;
  j["init"] = init;
  j["phase_signs"] = {{"kind", phase_signs_name(c.signs.kind)}, {"seed", c.signs.seed}};
  j["mean_spectrum"] = c.mean_spectrum;

  j["T_GHz"] = c.t_values;
  j["ej_GHz"] = run.ej_values;
  j["c"] = run.c_values;
  j["disorder"] = disorder_json(c.disorder);
  j["realizations"] = c.realizations;

  j["lyapunov"] = {{"d0", c.lyapunov.d0},
                   {"tau_ns", c.lyapunov.tau},
                   {"n_steps", c.lyapunov.n_steps},
                   {"transient_ns", c.lyapunov.transient}};
  j["integrator"] = {{"method", method_name(c.integrator.method)},
                     {"rel_tol", c.integrator.rel_tol},
                     {"abs_tol", c.integrator.abs_tol},
                     {"max_step_ns", c.integrator.max_step},
                     {"initial_step_ns", c.integrator.initial_step}};
  j["compute_ipr"] = c.compute_ipr;
  j["onsite"] = onsite_model_name(c.onsite);
  j["angular_convention"] = c.angular_convention;
  j["max_failure_fraction"] = c.max_failure_fraction;
  j["workers"] = c.workers;
  return j.dump(indent);
}

EnsembleRun run_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("run config: ") + e.what());
  }
  EnsembleRun run;
  EnsembleConfig& c = run.base;
  Reader r(j, "$");
  int version = kRunConfigVersion;
  r.get("config_version", version);
  if (version != kRunConfigVersion)
    throw ParameterError("run config version " + std::to_string(version) + " is not supported");

  if (r.has("lattice")) c.lattice = lattice_from_json(r.raw("lattice").dump());
  if (r.has("pattern")) {
    Reader p = r.child("pattern");
    std::string kind = "uniform";
    p.get("kind", kind);
    c.pattern.kind = parse_pattern_kind(kind);
    if (p.has("base_ej_GHz")) {
      Reader b = p.child("base_ej_GHz");
      for (const auto& [label, value] : p.raw("base_ej_GHz").items()) {
        double v = 0.0;
        b.number(label, v);
        c.pattern.base_ej[parse_sublattice(label)] = v;
      }
      b.finish();
    }
    p.finish();
  }
  if (r.has("init")) {
    Reader in = r.child("init");
    std::string kind = "alternating";
    in.get("kind", kind);
    c.init.kind = parse_init_kind(kind);
    in.get("levels", c.init.levels);
    in.get("k", c.init.k);
    in.get("seed", c.init.seed);
    in.finish();
  }
  if (r.has("phase_signs")) {
    Reader s = r.child("phase_signs");
    std::string kind = "uniform";
    s.get("kind", kind);
    c.signs.kind = parse_phase_signs(kind);
    s.get("seed", c.signs.seed);
    s.finish();
  }
  r.get("mean_spectrum", c.mean_spectrum);
  r.get("T_GHz", c.t_values);
  r.get("ej_GHz", run.ej_values);
  r.get("c", run.c_values);
  if (r.has("disorder")) {
    Reader d = r.child("disorder");
    d.number("mean_ej_GHz", c.disorder.mean_ej);
    d.number("c", c.disorder.c);
    d.number("e_c_GHz", c.disorder.e_c);
    d.get("master_seed", c.disorder.master_seed);
    if (d.has("spread_override_GHz")) {
      const json& v = d.raw("spread_override_GHz");
      if (v.is_null()) {
        c.disorder.spread_override.reset();
      } else if (v.is_number()) {
        c.disorder.spread_override = v.get<double>();
      } else {
        throw ParameterError("$.disorder.spread_override_GHz: expected a number or null");
      }
    }
    d.finish();
  }
  r.get("realizations", c.realizations);
  if (r.has("lyapunov")) {
    Reader l = r.child("lyapunov");
    l.number("d0", c.lyapunov.d0);
    l.number("tau_ns", c.lyapunov.tau);
    l.get("n_steps", c.lyapunov.n_steps);
    l.number("transient_ns", c.lyapunov.transient);
    l.finish();
  }
  if (r.has("integrator")) {
    Reader g = r.child("integrator");
    std::string method(method_name(c.integrator.method));
    g.get("method", method);
    c.integrator.method = parse_method(method);
    g.number("rel_tol", c.integrator.rel_tol);
    g.number("abs_tol", c.integrator.abs_tol);
    g.number("max_step_ns", c.integrator.max_step);
    g.number("initial_step_ns", c.integrator.initial_step);
    g.finish();
  }
  r.get("compute_ipr", c.compute_ipr);
  if (r.has("onsite")) {
    std::string onsite;
    r.get("onsite", onsite);
    c.onsite = parse_onsite_model(onsite);
  }
  r.get("angular_convention", c.angular_convention);
  r.number("max_failure_fraction", c.max_failure_fraction);
  r.get("workers", c.workers);
  r.finish();
  run.validate();
  return run;
}

}  // namespace transmon
