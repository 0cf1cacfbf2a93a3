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

#include "transmon/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "transmon/errors.hpp"

namespace transmon {
namespace {

// Tsitouras (2011) 5(4) pair.
namespace tsit5 {
constexpr std::array<std::array<double, 6>, 5> kA{{
    {0.161, 0, 0, 0, 0, 0},
    {-0.008480655492356989, 0.335480655492357, 0, 0, 0, 0},
    {2.897153057105493, -6.359448489975075, 4.3622954328695815, 0, 0, 0},
    {5.325864828439257, -11.748883564062828, 7.4955393428898365, -0.09249506636175525, 0, 0},
    {5.86145544294642, -12.92096931784711, 8.159367898576159, -0.071584973281401,
     -0.028269050394068383, 0},
}};
constexpr std::array<double, 6> kB{0.09646076681806523, 0.01,
                                   0.4798896504144996, 1.379008574103742,
                                   -3.290069515436081, 2.324710524099774};
// b - b_hat, including the FSAL stage
constexpr std::array<double, 7> kE{-0.00178001105222577714, -0.0008164344596567469,
                                   0.007880878010261995,    -0.1447110071732629,
                                   0.5823571654525552,      -0.45808210592918697,
                                   0.015151515151515152};
// b_i(theta) = sum_p kR[p][i] theta^(p+1)
constexpr std::array<std::array<double, 7>, 4> kR{{
    {1.0, 0, 0, 0, 0, 0, 0},
    {-2.763706197274826, 0.13169999999999998, 3.9302962368947516, -12.411077166933676,
     37.50931341651104, -27.896526289197286, 1.5},
    {2.9132554618219126, -0.2234, -5.941033872131505, 30.33818863028232, -88.1789048947664,
     65.09189467479366, -4.0},
    {-1.0530884977290216, 0.1017, 2.490627285651253, -16.548102889244902, 47.37952196281928,
     -34.87065786149661, 2.5},
}};
}  // namespace tsit5

// Dormand-Prince 8(5,3) as in Hairer's DOP853. Rows 0..10 give stages 2..12,
// rows 11..13 the three extra stages of the dense output (stage 13 is FSAL).
namespace dop853 {
constexpr std::array<std::array<double, 15>, 14> kA{{
    {0.05260015195876773, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0.0197250569845379, 0.0591751709536137, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0.02958758547680685, 0, 0.08876275643042054, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0.2413651341592667, 0, -0.8845494793282861, 0.924834003261792, 0, 0, 0, 0, 0, 0, 0, 0, 0,
     0, 0},
    {0.037037037037037035, 0, 0, 0.17082860872947386, 0.12546768756682242, 0, 0, 0, 0, 0, 0, 0,
     0, 0, 0},
    {0.037109375, 0, 0, 0.17025221101954405, 0.06021653898045596, -0.017578125, 0, 0, 0, 0, 0, 0,
     0, 0, 0},
    {0.03709200011850479, 0, 0, 0.17038392571223998, 0.10726203044637328, -0.015319437748624402,
     0.008273789163814023, 0, 0, 0, 0, 0, 0, 0, 0},
    {0.6241109587160757, 0, 0, -3.3608926294469414, -0.868219346841726, 27.59209969944671,
     20.154067550477894, -43.48988418106996, 0, 0, 0, 0, 0, 0, 0},
    {0.47766253643826434, 0, 0, -2.4881146199716677, -0.590290826836843, 21.230051448181193,
     15.279233632882423, -33.28821096898486, -0.020331201708508627, 0, 0, 0, 0, 0, 0},
    {-0.9371424300859873, 0, 0, 5.186372428844064, 1.0914373489967295, -8.149787010746927,
     -18.52006565999696, 22.739487099350505, 2.4936055526796523, -3.0467644718982196, 0, 0, 0, 0,
     0},
    {2.273310147516538, 0, 0, -10.53449546673725, -2.0008720582248625, -17.9589318631188,
     27.94888452941996, -2.8589982771350235, -8.87285693353063, 12.360567175794303,
     0.6433927460157636, 0, 0, 0, 0},
    {0.056167502283047954, 0, 0, 0, 0, 0, 0.25350021021662483, -0.2462390374708025,
     -0.12419142326381637, 0.15329179827876568, 0.00820105229563469, 0.007567897660545699,
     -0.008298, 0, 0},
    {0.03183464816350214, 0, 0, 0, 0, 0.028300909672366776, 0.053541988307438566,
     -0.05492374857139099, 0, 0, -0.00010834732869724932, 0.0003825710908356584,
     -0.00034046500868740456, 0.1413124436746325, 0},
    {-0.42889630158379194, 0, 0, 0, 0, -4.697621415361164, 7.683421196062599, 4.06898981839711,
     0.3567271874552811, 0, 0, 0, -0.0013990241651590145, 2.9475147891527724,
     -9.15095847217987},
}};
constexpr std::array<double, 12> kB{0.054293734116568765, 0, 0, 0, 0, 4.450312892752409,
                                    1.8915178993145003,   -5.801203960010585,
                                    0.3111643669578199,   -0.1521609496625161,
                                    0.20136540080403034,  0.04471061572777259};
constexpr std::array<double, 12> kE5{0.01312004499419488,  0, 0, 0, 0, -1.2251564463762044,
                                     -0.4957589496572502,  1.6643771824549864,
                                     -0.35032884874997366, 0.3341791187130175,
                                     0.08192320648511571,  -0.022355307863886294};
// third-order estimate: sum b k - (kE3[0] k1 + kE3[1] k9 + kE3[2] k12)
constexpr std::array<double, 3> kE3{0.2440944881889764, 0.7338466882816118,
                                    0.022058823529411766};
constexpr std::array<std::array<double, 16>, 4> kD{{
    {-8.428938276109013, 0, 0, 0, 0, 0.5667149535193777, -3.0689499459498917, 2.38466765651207,
     2.117034582445028, -0.871391583777973, 2.2404374302607883, 0.6315787787694688,
     -0.08899033645133331, 18.148505520854727, -9.194632392478356, -4.436036387594894},
    {10.427508642579134, 0, 0, 0, 0, 242.28349177525817, 165.20045171727028, -374.5467547226902,
     -22.113666853125306, 7.733432668472264, -30.674084731089398, -9.332130526430229,
     15.697238121770845, -31.139403219565178, -9.35292435884448, 35.81684148639408},
    {19.985053242002433, 0, 0, 0, 0, -387.0373087493518, -189.17813819516758, 527.8081592054236,
     -11.57390253995963, 6.8812326946963, -1.0006050966910838, 0.7777137798053443,
     -2.778205752353508, -60.19669523126412, 84.32040550667716, 11.99229113618279},
    {-25.69393346270375, 0, 0, 0, 0, -154.18974869023643, -231.5293791760455, 357.6391179106141,
     93.40532418362432, -37.45832313645163, 104.0996495089623, 29.8402934266605,
     -43.53345659001114, 96.32455395918828, -39.17726167561544, -149.72683625798564},
}};
}  // namespace dop853

constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

int error_order(Method m) { return m == Method::rk54 ? 5 : 8; }

}  // namespace

std::string_view method_name(Method m) { return m == Method::rk54 ? "rk54" : "rk87"; }

Method parse_method(std::string_view name) {
  if (name == "rk54" || name == "tsit5") return Method::rk54;
  if (name == "rk87" || name == "dop853") return Method::rk87;
  throw ParameterError("unknown integration method '" + std::string(name) + "'");
}

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw ParameterError("rel_tol must lie in (0, 1e-2]");
  if (!(abs_tol > 0.0 && abs_tol <= 1e-2)) throw ParameterError("abs_tol must lie in (0, 1e-2]");
  if (!(max_step > 0.0) || !std::isfinite(max_step)) throw ParameterError("max_step must be > 0");
  if (!(initial_step >= 0.0)) throw ParameterError("initial_step must be >= 0");
}

std::size_t dense_block_count(Method m) { return m == Method::rk54 ? 5 : 8; }

void dense_interpolate(Method m, std::span<const double> c, std::size_t dim, double theta,
                       std::span<double> out) {
  if (m == Method::rk54) {
    const double* y0 = c.data();
    const double* c1 = y0 + dim;
    const double* c2 = c1 + dim;
    const double* c3 = c2 + dim;
    const double* c4 = c3 + dim;
    for (std::size_t i = 0; i < dim; ++i)
      out[i] = y0[i] + theta * (c1[i] + theta * (c2[i] + theta * (c3[i] + theta * c4[i])));
    return;
  }
  const double s = theta;
  const double s1 = 1.0 - theta;
  const double* r = c.data();
  for (std::size_t i = 0; i < dim; ++i) {
    const double a6 = r[6 * dim + i] + s * r[7 * dim + i];
    const double a5 = r[5 * dim + i] + a6 * s1;
    const double a4 = r[4 * dim + i] + a5 * s;
    const double a3 = r[3 * dim + i] + a4 * s1;
    const double a2 = r[2 * dim + i] + a3 * s;
    const double a1 = r[dim + i] + a2 * s1;
    out[i] = r[i] + s * a1;
  }
}

Stepper::Stepper(RhsFunction f, std::size_t dim, const IntegratorConfig& config,
                 const simd::KernelTable& kernels)
    : f_(std::move(f)), dim_(dim), config_(config), kernels_(&kernels) {
  config_.validate();
  if (dim_ == 0) throw DimensionError("empty system");
  for (auto* v : {&y_, &y_prev_, &y_new_, &f0_, &f_prev_, &f_new_, &err_, &tmp_}) v->assign(dim_, 0.0);
  k_.assign(16, std::vector<double>(dim_, 0.0));
}

void Stepper::eval(std::span<const double> y, std::span<double> dy) {
  f_(y, dy);
  ++evals_;
}

double Stepper::error_norm(std::span<const double> err) {
  const double sq = kernels_->scaled_sq_norm(err, y_, y_new_, config_.abs_tol, config_.rel_tol);
  return std::sqrt(sq / static_cast<double>(dim_));
}

double Stepper::initial_step() {
  // Hairer, Norsett & Wanner, starting step heuristic
  const auto rel_norm = [&](std::span<const double> v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double sc = config_.abs_tol + config_.rel_tol * std::abs(y_[i]);
      acc += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(acc / static_cast<double>(dim_));
  };
  const double n0 = rel_norm(y_);
  const double n1 = rel_norm(f0_);
  double h0 = (n0 < 1e-5 || n1 < 1e-5) ? 1e-6 : 0.01 * n0 / n1;
  h0 = std::min(h0, config_.max_step);
  for (std::size_t i = 0; i < dim_; ++i) tmp_[i] = y_[i] + h0 * f0_[i];
  eval(tmp_, f_new_);
  for (std::size_t i = 0; i < dim_; ++i) err_[i] = f_new_[i] - f0_[i];
  const double n2 = rel_norm(err_) / h0;
  const double order = static_cast<double>(error_order(config_.method));
  const double big = std::max(n1, n2);
  const double h1 = big <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / big, 1.0 / order);
  return std::min({100.0 * h0, h1, config_.max_step});
}

void Stepper::reset(double t, std::span<const double> y) {
  if (y.size() != dim_) throw DimensionError("state size does not match the system");
  t_ = t_prev_ = t;
  std::copy(y.begin(), y.end(), y_.begin());
  eval(y_, f0_);
  err_old_ = 1e-4;
  last_rejected_ = false;
  dense_ready_ = false;
  has_step_ = false;
  h_ = config_.initial_step > 0.0 ? std::min(config_.initial_step, config_.max_step) : initial_step();
}

void Stepper::set_state(std::span<const double> y) {
  if (y.size() != dim_) throw DimensionError("state size does not match the system");
  std::copy(y.begin(), y.end(), y_.begin());
  eval(y_, f0_);
  t_prev_ = t_;
  dense_ready_ = false;
  has_step_ = false;
}

double Stepper::attempt_tsit5(double h) {
  using namespace tsit5;
  std::array<const double*, 7> st{};
  st[0] = f0_.data();
  for (std::size_t s = 0; s < 5; ++s) {
    for (std::size_t j = 0; j <= s; ++j) st[j + 1] = k_[j + 1].data();
    st[0] = f0_.data();
    kernels_->combine(tmp_, y_, h, std::span<const double>(kA[s].data(), s + 1),
                      std::span<const double* const>(st.data(), s + 1));
    eval(tmp_, k_[s + 1]);
  }
  for (std::size_t j = 1; j < 6; ++j) st[j] = k_[j].data();
  kernels_->combine(y_new_, y_, h, kB, std::span<const double* const>(st.data(), 6));
  eval(y_new_, f_new_);
  st[6] = f_new_.data();
  kernels_->combine(err_, {}, h, kE, st);
  return error_norm(err_);
}

double Stepper::attempt_dop853(double h) {
  using namespace dop853;
  std::array<const double*, 12> st{};
  st[0] = f0_.data();
  for (std::size_t j = 1; j < 12; ++j) st[j] = k_[j].data();
  for (std::size_t s = 0; s < 11; ++s) {
    kernels_->combine(tmp_, y_, h, std::span<const double>(kA[s].data(), s + 1),
                      std::span<const double* const>(st.data(), s + 1));
    eval(tmp_, k_[s + 1]);
  }
  // tmp = sum b k (the increment direction); y_new = y + h tmp
  kernels_->combine(tmp_, {}, 1.0, kB, st);
  for (std::size_t i = 0; i < dim_; ++i) y_new_[i] = y_[i] + h * tmp_[i];

  double err5 = 0.0;
  double err3 = 0.0;
  kernels_->combine(err_, {}, 1.0, kE5, st);
  err5 = kernels_->scaled_sq_norm(err_, y_, y_new_, config_.abs_tol, config_.rel_tol);
  for (std::size_t i = 0; i < dim_; ++i)
    err_[i] = tmp_[i] - kE3[0] * f0_[i] - kE3[1] * k_[8][i] - kE3[2] * k_[11][i];
  err3 = kernels_->scaled_sq_norm(err_, y_, y_new_, config_.abs_tol, config_.rel_tol);
  double deno = err5 + 0.01 * err3;
  if (deno <= 0.0) deno = 1.0;
  const double err = std::abs(h) * err5 * std::sqrt(1.0 / (static_cast<double>(dim_) * deno));
  if (!std::isfinite(err)) return err;
  eval(y_new_, f_new_);
  return err;
}

double Stepper::attempt(double h) {
  return config_.method == Method::rk54 ? attempt_tsit5(h) : attempt_dop853(h);
}

void Stepper::step(double t_stop) {
  if (!(t_stop > t_)) throw ParameterError("step target must lie ahead of the current time");
  const double order = static_cast<double>(error_order(config_.method));
  const double beta1 = 0.7 / order;
  const double beta2 = 0.4 / order;
  const double eps = std::numeric_limits<double>::epsilon();
  for (;;) {
    const double h_wanted = std::min(h_, config_.max_step);
    double h = h_wanted;
    bool clamped = false;
    if (t_ + h >= t_stop) {
      h = t_stop - t_;
      clamped = true;
    }
    if (h <= 16.0 * eps * std::max(1.0, std::abs(t_)))
      throw IntegrationError("step size underflow", t_);

    const double err = attempt(h);
    if (std::isfinite(err) && err <= 1.0) {
      double fac = err == 0.0 ? kFacMax
                              : kSafety * std::pow(err, -beta1) * std::pow(err_old_, beta2);
      fac = std::clamp(fac, kFacMin, kFacMax);
      if (last_rejected_) fac = std::min(fac, 1.0);
      err_old_ = std::max(err, 1e-4);
      last_rejected_ = false;

      std::swap(y_prev_, y_);
      std::swap(y_, y_new_);
      std::swap(f_prev_, f0_);
      std::swap(f0_, f_new_);
      t_prev_ = t_;
      t_ = clamped ? t_stop : t_ + h;
      h_last_ = h;
      double h_next = h * fac;
      if (clamped && fac >= 1.0) h_next = std::max(h_next, h_wanted);
      h_ = std::min(h_next, config_.max_step);
      ++accepted_;
      dense_ready_ = false;
      has_step_ = true;
      return;
    }
    const double fac =
        std::isfinite(err) ? std::max(kFacMin, kSafety * std::pow(err, -1.0 / order)) : kFacMin;
    h_ = h * fac;
    last_rejected_ = true;
    ++rejected_;
  }
}

void Stepper::advance_to(double t_target) {
  while (t_ < t_target) step(t_target);
}

void Stepper::prepare_dense() {
  if (dense_ready_) return;
  if (!has_step_) throw ParameterError("no accepted step to interpolate");
  const double h = h_last_;
  const std::size_t n = dim_;
  const std::size_t blocks = dense_block_count(config_.method);
  dense_.assign(blocks * n, 0.0);
  if (config_.method == Method::rk54) {
    using namespace tsit5;
    std::array<const double*, 7> st{f_prev_.data(), k_[1].data(), k_[2].data(), k_[3].data(),
                                    k_[4].data(),   k_[5].data(), f0_.data()};
    std::copy(y_prev_.begin(), y_prev_.end(), dense_.begin());
    for (std::size_t p = 0; p < 4; ++p)
      kernels_->combine(std::span<double>(dense_.data() + (p + 1) * n, n), {}, h, kR[p], st);
  } else {
    using namespace dop853;
    // k_[12..14] receive stages 14..16
    std::array<const double*, 16> st{};
    st[0] = f_prev_.data();
    for (std::size_t j = 1; j < 12; ++j) st[j] = k_[j].data();
    st[12] = f0_.data();
    for (std::size_t j = 13; j < 16; ++j) st[j] = k_[j - 1].data();
    for (std::size_t s = 11; s < 14; ++s) {
      kernels_->combine(tmp_, y_prev_, h, std::span<const double>(kA[s].data(), s + 2),
                        std::span<const double* const>(st.data(), s + 2));
      eval(tmp_, k_[s + 1]);
    }
    double* r = dense_.data();
    for (std::size_t i = 0; i < n; ++i) {
      const double dy = y_[i] - y_prev_[i];
      const double bspl = h * f_prev_[i] - dy;
      r[i] = y_prev_[i];
      r[n + i] = dy;
      r[2 * n + i] = bspl;
      r[3 * n + i] = dy - h * f0_[i] - bspl;
    }
    for (std::size_t p = 0; p < 4; ++p)
      kernels_->combine(std::span<double>(r + (4 + p) * n, n), {}, h, kD[p], st);
  }
  dense_ready_ = true;
}

void Stepper::dense_coefficients(std::vector<double>& out) {
  prepare_dense();
  out.assign(dense_.begin(), dense_.end());
}

void Stepper::dense_eval(double t, std::span<double> out) {
  if (!has_step_) throw ParameterError("no accepted step to interpolate");
  if (t == t_) {
    std::copy(y_.begin(), y_.end(), out.begin());
    return;
  }
  if (t == t_prev_) {
    std::copy(y_prev_.begin(), y_prev_.end(), out.begin());
    return;
  }
  if (t < t_prev_ || t > t_) throw DomainError("dense output requested outside the last step");
  prepare_dense();
  dense_interpolate(config_.method, dense_, dim_, (t - t_prev_) / (t_ - t_prev_), out);
}

Trajectory evolve(const ArrayParams& params, const ClassicalState& state0, double t0, double t1,
                  const IntegratorConfig& config) {
  check_state(params, state0);
  if (!(t1 > t0)) throw ParameterError("evolve needs t1 > t0");
  PendulumArray system(params);
  Stepper stepper([&system](std::span<const double> y, std::span<double> dy) { system.rhs(y, dy); },
                  system.dimension(), config);
  const std::vector<double> y0 = state0.to_flat();
  stepper.reset(t0, y0);

  Trajectory traj;
  traj.method = config.method;
  traj.sites = params.size();
  traj.times.push_back(t0);
  traj.states.push_back(state0.wrapped());
  traj.energy0 = system.energy(y0);
  const double scale = traj.energy0 != 0.0 ? std::abs(traj.energy0) : 1.0;
  std::vector<double> coeffs;
  while (stepper.t() < t1) {
    stepper.step(t1);
    stepper.dense_coefficients(coeffs);
    traj.dense.insert(traj.dense.end(), coeffs.begin(), coeffs.end());
    traj.times.push_back(stepper.t());
    traj.states.push_back(ClassicalState::from_flat(stepper.y(), true));
    const double drift = std::abs(system.energy(stepper.y()) - traj.energy0) / scale;
    traj.max_energy_drift = std::max(traj.max_energy_drift, drift);
    traj.final_energy_drift = drift;
  }
  traj.accepted_steps = stepper.accepted_steps();
  traj.rejected_steps = stepper.rejected_steps();
  return traj;
}

ClassicalState evaluate(const Trajectory& traj, double t) {
  if (traj.times.empty()) throw DomainError("empty trajectory");
  if (!(t >= traj.times.front() && t <= traj.times.back()))
    throw DomainError("time " + std::to_string(t) + " outside the trajectory span");
  const auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - traj.times.begin()) - 1;
  if (traj.times[k] == t) return traj.states[k];
  const std::size_t dim = 2 * traj.sites;
  const std::size_t stride = dense_block_count(traj.method) * dim;
  const double theta = (t - traj.times[k]) / (traj.times[k + 1] - traj.times[k]);
  std::vector<double> y(dim);
  dense_interpolate(traj.method, std::span<const double>(traj.dense.data() + k * stride, stride),
                    dim, theta, y);
  return ClassicalState::from_flat(y, true);
}

}  // namespace transmon
