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

#include "transmon/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "transmon/errors.hpp"

namespace transmon {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    purpose};
  return std::mt19937_64(seq);
}

constexpr std::uint32_t kDisorderStream = 0x656a;

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_text(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  return s;
}

}  // namespace

void DisorderSpec::validate() const {
  if (!(mean_ej > 0.0) || !std::isfinite(mean_ej)) throw ParameterError("mean E_J must be positive");
  if (!(e_c > 0.0) || !std::isfinite(e_c)) throw ParameterError("E_C must be positive");
  if (!(c >= 0.0) || !std::isfinite(c)) throw ParameterError("disorder level c must be >= 0");
  if (spread_override && (!(*spread_override >= 0.0) || !std::isfinite(*spread_override)))
    throw ParameterError("E_J spread must be >= 0");
}

double DisorderSpec::spread() const {
  if (spread_override) return *spread_override;
  return c * std::sqrt(e_c * mean_ej / 2.0);
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index ^ 0x5bd1e9955bd1e995ULL));
}

std::vector<double> sample_around(std::span<const double> centers, double spread,
                                  std::uint64_t master_seed, std::uint64_t index) {
  if (centers.empty()) throw ParameterError("need at least one site");
  if (!(spread >= 0.0)) throw ParameterError("spread must be >= 0");
  std::mt19937_64 rng = stream(realization_seed(master_seed, index), kDisorderStream);
  std::vector<double> out(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (spread == 0.0) {
      out[i] = centers[i];
      if (!(out[i] > 0.0)) throw ParameterError("non-positive E_J center");
      continue;
    }
    std::normal_distribution<double> g(centers[i], spread);
    int tries = 0;
    do {
      if (++tries > kMaxRejections)
        throw ParameterError("E_J draw rejected " + std::to_string(kMaxRejections) +
                             " times; spread too large for the mean");
      out[i] = g(rng);
    } while (!(out[i] > 0.0));
  }
  return out;
}

std::vector<double> sample_ejs(const DisorderSpec& spec, std::size_t L, std::uint64_t index) {
  spec.validate();
  if (L == 0) throw ParameterError("L must be >= 1");
  const std::vector<double> centers(L, spec.mean_ej);
  return sample_around(centers, spec.spread(), spec.master_seed, index);
}

EnsembleStats summarize(std::span<const double> values, std::size_t bins) {
  EnsembleStats s;
  s.count = values.size();
  if (values.empty()) return s;
  if (bins == 0) throw ParameterError("histogram needs at least one bin");
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  s.max = sorted.back();
  const double lo = sorted.front();
  double hi = sorted.back();
  if (!(hi > lo)) hi = lo + std::max(1e-12, 1e-12 * std::abs(lo));
  s.histogram.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    s.histogram.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
  s.histogram.counts.assign(bins, 0);
  for (double v : values) {
    const auto b = static_cast<std::size_t>(
        std::clamp((v - lo) / (hi - lo) * static_cast<double>(bins), 0.0,
                   static_cast<double>(bins - 1)));
    ++s.histogram.counts[b];
  }
  return s;
}

void EnsembleConfig::validate() const {
  disorder.validate();
  if (t_values.empty()) throw ParameterError("coupling sweep is empty");
  for (double t : t_values)
    if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("coupling values must be >= 0");
  if (realizations == 0) throw ParameterError("need at least one realization");
  if (!(max_failure_fraction >= 0.0 && max_failure_fraction <= 1.0))
    throw ParameterError("failure fraction must lie in [0, 1]");
  lyapunov.validate();
  integrator.validate();
  if (compute_ipr && lattice.size() > 14)
    throw CapacityError("IPR blocks are limited to L <= 14 sites");
}

PreparedRealization prepare_realization(const EnsembleConfig& config, double t_coupling,
                                        std::size_t index) {
  const Lattice& lat = config.lattice;
  std::vector<double> centers(lat.size(), config.disorder.mean_ej);
  if (!config.pattern.base_ej.empty())
    centers = apply_pattern(lat, config.pattern, std::vector<double>(lat.size(), 0.0));
  std::vector<double> ej =
      sample_around(centers, config.disorder.spread(), config.disorder.master_seed, index);
  const double ej_mean =
      std::accumulate(ej.begin(), ej.end(), 0.0) / static_cast<double>(ej.size());
  ArrayParams params = lat.params(config.disorder.e_c, std::move(ej), t_coupling);

  InitSpec init = config.init;
  if (init.kind == InitKind::random_k_excited) init.seed = realization_seed(init.seed, index);
  PhaseSignSpec signs = config.signs;
  if (signs.kind == PhaseSigns::random) signs.seed = realization_seed(signs.seed, index);
  const auto spectra = site_spectra(params, config.mean_spectrum);
  ClassicalState state = init_state(params, initial_pattern(lat, init), spectra, signs);
  ArrayParams integration = config.angular_convention ? params.scaled(2.0 * kPi) : params;
  return PreparedRealization{std::move(params), std::move(integration), std::move(state),
                             realization_seed(config.disorder.master_seed, index), ej_mean};
}

RealizationResult run_realization(const EnsembleConfig& config, double t_coupling,
                                  std::size_t index) {
  RealizationResult r;
  r.index = index;
  r.seed = realization_seed(config.disorder.master_seed, index);
  r.t_coupling = t_coupling;
  try {
    const PreparedRealization prep = prepare_realization(config, t_coupling, index);
    r.ej_mean = prep.ej_mean;
    LyapunovOptions opts = config.lyapunov;
    opts.seed = prep.seed;
    const LyapunovEstimate est =
        max_lyapunov_benettin(prep.integration_params, prep.state, opts, config.integrator);
    r.lambda = est.lambda_max;
    r.converged = est.converged;
    if (config.compute_ipr) r.ipr = mean_block_ipr(prep.params, config.onsite);
  } catch (const Error& e) {
    r.error = e.what();
    if (r.error.empty()) r.error = "unknown failure";
  }
  return r;
}

std::vector<EnsembleResult> run_ensemble(const EnsembleConfig& config, const ProgressFn& progress) {
  config.validate();
  const std::size_t n_t = config.t_values.size();
  const std::size_t R = config.realizations;
  const std::size_t total = n_t * R;
  std::vector<RealizationResult> rows(total);

  std::size_t workers = config.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, total);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex mu;
  std::exception_ptr fatal;
  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= total) return;
      try {
        rows[k] = run_realization(config, config.t_values[k / R], k % R);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!fatal) fatal = std::current_exception();
        next.store(total);
        return;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(mu);
        progress(d, total);
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  std::vector<EnsembleResult> out(n_t);
  for (std::size_t ti = 0; ti < n_t; ++ti) {
    EnsembleResult& res = out[ti];
    res.t_coupling = config.t_values[ti];
    res.rows.assign(std::make_move_iterator(rows.begin() + static_cast<std::ptrdiff_t>(ti * R)),
                    std::make_move_iterator(rows.begin() + static_cast<std::ptrdiff_t>((ti + 1) * R)));
    std::vector<double> lam;
    std::vector<double> ipr;
    for (const RealizationResult& r : res.rows) {
      if (!r.ok()) {
        ++res.failures;
        continue;
      }
      lam.push_back(r.lambda);
      if (r.ipr) ipr.push_back(*r.ipr);
    }
    res.lambda = summarize(lam);
    if (config.compute_ipr) res.ipr = summarize(ipr);
  }
  if (config.enforce_failure_budget) enforce_failure_budget(out, config.max_failure_fraction);
  return out;
}

void enforce_failure_budget(std::span<const EnsembleResult> results, double max_fraction) {
  for (const EnsembleResult& r : results) {
    const double frac = r.rows.empty() ? 0.0
                                       : static_cast<double>(r.failures) /
                                             static_cast<double>(r.rows.size());
    if (frac > max_fraction) {
      std::string first;
      for (const auto& row : r.rows)
        if (!row.ok()) {
          first = row.error;
          break;
        }
      throw EnsembleError(std::to_string(r.failures) + " of " + std::to_string(r.rows.size()) +
                          " realizations failed at T = " + csv_number(r.t_coupling) +
                          " GHz (first: " + first + ")");
    }
  }
}

void write_results_csv(std::ostream& out, std::span<const EnsembleResult> results,
                       const DisorderSpec& disorder, bool header) {
  if (header)
    out << "realization,seed,T_GHz,ej_nominal_GHz,ej_mean_GHz,c,ej_spread_GHz,lambda_per_ns,"
           "ipr_mean,converged,status\n";
  const std::string nominal = csv_number(disorder.mean_ej);
  const std::string c = csv_number(disorder.c);
  const std::string spread = csv_number(disorder.spread());
  for (const EnsembleResult& res : results) {
    for (const RealizationResult& r : res.rows) {
      out << r.index << ',' << r.seed << ',' << csv_number(r.t_coupling) << ',' << nominal
          << ',' << (r.ok() ? csv_number(r.ej_mean) : "") << ',' << c << ',' << spread << ','
          << (r.ok() ? csv_number(r.lambda) : "") << ',' << (r.ipr ? csv_number(*r.ipr) : "")
          << ',' << (r.converged ? 1 : 0) << ',' << (r.ok() ? "ok" : csv_text(r.error)) << '\n';
    }
  }
}

namespace {

double interpolate(std::span<const double> x, std::span<const double> y, double at) {
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  if (it == x.begin()) return y.front();
  if (it == x.end()) return y.back();
  const auto k = static_cast<std::size_t>(it - x.begin());
  const double w = (at - x[k - 1]) / (x[k] - x[k - 1]);
  return y[k - 1] + w * (y[k] - y[k - 1]);
}

}  // namespace

CollapseResult collapse_check(std::span<const CollapseCurve> curves, const CollapseOptions& options) {
  if (curves.size() < 2) throw ParameterError("collapse needs at least two curves");
  if (options.grid_points < 2) throw ParameterError("collapse grid needs at least two points");
  std::vector<std::vector<double>> us;
  CollapseResult res;
  res.u_min = -std::numeric_limits<double>::infinity();
  res.u_max = std::numeric_limits<double>::infinity();
  for (const CollapseCurve& c : curves) {
    if (!(c.e_j > 0.0)) throw ParameterError("curve E_J must be positive");
    if (c.t.size() != c.lambda.size() || c.t.size() < 2)
      throw DimensionError("curve needs matching T and lambda lists of length >= 2");
    std::vector<double> u;
    for (std::size_t k = 0; k < c.t.size(); ++k) {
      if (k > 0 && !(c.t[k] > c.t[k - 1])) throw ParameterError("curve T values must increase");
      u.push_back(c.t[k] * std::sqrt(c.e_j));
    }
    res.u_min = std::max(res.u_min, u.front());
    res.u_max = std::min(res.u_max, u.back());
    const auto peak_at = static_cast<std::size_t>(
        std::max_element(c.lambda.begin(), c.lambda.end()) - c.lambda.begin());
    res.peak = std::max(res.peak, c.lambda[peak_at]);
    if (options.rising_flank_only) res.u_max = std::min(res.u_max, u[peak_at]);
    us.push_back(std::move(u));
  }
  if (!(res.u_max > res.u_min)) throw DomainError("curves share no u = T sqrt(E_J) support");
  if (!(res.peak > 0.0)) throw DegenerateError("peak lambda is not positive");
  double worst = 0.0;
  for (std::size_t g = 0; g < options.grid_points; ++g) {
    const double u = res.u_min + (res.u_max - res.u_min) * static_cast<double>(g) /
                                     static_cast<double>(options.grid_points - 1);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const double v = interpolate(us[c], curves[c].lambda, u);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst = std::max(worst, hi - lo);
  }
  res.deviation = worst / res.peak;
  return res;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("correlation inputs differ in length");
  if (x.size() < 2) throw ParameterError("correlation needs at least two pairs");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateError("constant input has no rank correlation");
  return sxy / std::sqrt(sxx * syy);
}

CorrelationResult correlation_lambda_ipr(std::span<const double> lambda,
                                         std::span<const double> ipr) {
  if (lambda.size() != ipr.size()) throw DimensionError("lambda and IPR lists differ in length");
  if (lambda.size() < kMinCorrelationPairs)
    throw ParameterError("correlation needs at least " + std::to_string(kMinCorrelationPairs) +
                         " pairs");
  CorrelationResult res;
  res.spearman_rho = spearman(lambda, ipr);

  const auto [mn, mx] = std::minmax_element(lambda.begin(), lambda.end());
  const double lo = *mn;
  const double width = (*mx - lo) / static_cast<double>(kEnvelopeBins);
  std::vector<std::optional<std::size_t>> top(kEnvelopeBins);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const auto b = static_cast<std::size_t>(
        std::clamp((lambda[i] - lo) / width, 0.0, static_cast<double>(kEnvelopeBins - 1)));
    if (!top[b] || ipr[i] > ipr[*top[b]]) top[b] = i;
  }
  std::vector<double> ex, ey;
  for (const auto& t : top)
    if (t) {
      ex.push_back(lambda[*t]);
      ey.push_back(ipr[*t]);
    }
  const double n = static_cast<double>(ex.size());
  const double mxv = std::accumulate(ex.begin(), ex.end(), 0.0) / n;
  const double myv = std::accumulate(ey.begin(), ey.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    sxy += (ex[i] - mxv) * (ey[i] - myv);
    sxx += (ex[i] - mxv) * (ex[i] - mxv);
  }
  res.bound_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  res.bound_intercept = myv - res.bound_slope * mxv;
  return res;
}

}  // namespace transmon
