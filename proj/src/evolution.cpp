#include "nks/evolution.hpp"

#include <cmath>
#include <random>

namespace nks {

namespace {

Eigen::VectorXd linear_symbol(const ModelParams& p, int modes) {
  Eigen::VectorXd lin(modes);
  for (int k = 1; k <= modes; ++k)
    lin[k - 1] = std::pow(double(k), p.r) - p.eps * std::pow(double(k), p.s);
  return lin;
}

}  // namespace

SpectralField imex_step(const ModelParams& p, const SpectralField& u, double dt,
                        const ImexConfig& cfg) {
  if (!(dt > 0.0)) throw std::invalid_argument("imex_step: require dt > 0");
  const int m = u.modes();
  const Eigen::VectorXd lin = linear_symbol(p, m);
  Eigen::VectorXd nl = Eigen::VectorXd::Zero(m);
  if (cfg.nonlinear_enabled) nl = -nonlinear_term(u).coeffs();

  Eigen::VectorXd next(m);
  for (int i = 0; i < m; ++i)
    next[i] = (u.coeffs()[i] * (1.0 + 0.5 * dt * lin[i]) + dt * nl[i]) /
              (1.0 - 0.5 * dt * lin[i]);
  SpectralField out{std::move(next)};
  if (linf_norm(out) > cfg.blowup_cap)
    throw BlowupDetected("imex_step: amplitude above blow-up cap");
  return out;
}

ImexStepper::ImexStepper(ModelParams p, SpectralField u0, double dt, ImexConfig cfg)
    : p_(p), cfg_(cfg), dt_(dt), u_(std::move(u0)), plan_(u_.modes()) {
  if (!(dt_ > 0.0)) throw std::invalid_argument("ImexStepper: require dt > 0");
  p_.validate();
  lin_ = linear_symbol(p_, u_.modes());
  prev_nl_ = Eigen::VectorXd::Zero(u_.modes());
}

Eigen::VectorXd ImexStepper::nonlinear_coeffs() const {
  if (!cfg_.nonlinear_enabled) return Eigen::VectorXd::Zero(u_.modes());
  const Eigen::VectorXd uj = plan_.sine_values(u_);
  if (uj.cwiseAbs().maxCoeff() > cfg_.blowup_cap)
    throw BlowupDetected("ImexStepper: amplitude above blow-up cap");
  const Eigen::VectorXd uxj = plan_.cosine_values(derivative(u_));
  return -plan_.analyze(uj.cwiseProduct(uxj));
}

void ImexStepper::step() {
  const Eigen::VectorXd nl = nonlinear_coeffs();
  // AB2 weights after the first step, explicit Euler on the first.
  const Eigen::VectorXd nl_ext =
      (steps_taken_ == 0) ? nl : (1.5 * nl - 0.5 * prev_nl_).eval();

  Eigen::VectorXd next(u_.modes());
  const Eigen::VectorXd& a = u_.coeffs();
  for (int i = 0; i < u_.modes(); ++i)
    next[i] = (a[i] * (1.0 + 0.5 * dt_ * lin_[i]) + dt_ * nl_ext[i]) /
              (1.0 - 0.5 * dt_ * lin_[i]);
  if (!next.allFinite()) throw BlowupDetected("ImexStepper: non-finite state");

  u_ = SpectralField(std::move(next));
  prev_nl_ = nl;
  ++steps_taken_;
}

EnergySample measure_energies(const ModelParams& p, const SpectralField& u) {
  EnergySample e;
  const double l2 = l2_norm(u);
  const double hr = sobolev_seminorm(u, p.r / 2.0);
  const double hs = sobolev_seminorm(u, p.s / 2.0);
  e.l2_sq = l2 * l2;
  e.hr2_sq = hr * hr;
  e.hs2_sq = hs * hs;
  return e;
}

Trajectory evolve(const ModelParams& p, const SpectralField& u0, double T, double dt,
                  int sample_every, const ImexConfig& cfg) {
  if (!(T > 0.0)) throw std::invalid_argument("evolve: require T > 0");
  if (sample_every < 1) throw std::invalid_argument("evolve: require sample_every >= 1");
  const int n_steps = std::max(1, static_cast<int>(std::llround(T / dt)));

  ImexStepper stepper(p, u0, dt, cfg);
  Trajectory traj;
  auto record = [&] {
    traj.times.push_back(stepper.time());
    traj.states.push_back(stepper.state());
    traj.energies.push_back(measure_energies(p, stepper.state()));
  };
  record();
  for (int n = 1; n <= n_steps; ++n) {
    stepper.step();
    if (n % sample_every == 0 || n == n_steps) record();
  }
  return traj;
}

std::vector<double> energy_balance_residual(const Trajectory& traj, double eps) {
  if (traj.times.size() < 3)
    throw std::invalid_argument("energy_balance_residual: need >= 3 samples");
  std::vector<double> out;
  out.reserve(traj.times.size() - 2);
  for (std::size_t i = 1; i + 1 < traj.times.size(); ++i) {
    const double dE = (traj.energies[i + 1].l2_sq - traj.energies[i - 1].l2_sq) /
                      (traj.times[i + 1] - traj.times[i - 1]);
    out.push_back(std::abs(0.5 * dE + eps * traj.energies[i].hs2_sq -
                           traj.energies[i].hr2_sq));
  }
  return out;
}

const char* stability_verdict_name(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::returns: return "returns";
    case StabilityVerdict::departs: return "departs";
    case StabilityVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

SpectralField random_odd_field(int modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd c(modes);
  for (int k = 1; k <= modes; ++k) c[k - 1] = gauss(rng) / double(k);
  SpectralField u{std::move(c)};
  const double norm = l2_norm(u);
  if (norm == 0.0) return SpectralField::single_mode(modes, 1, 1.0 / std::sqrt(std::numbers::pi));
  u *= 1.0 / norm;
  return u;
}

StabilityVerdict stability_probe(const ModelParams& p, const SpectralField& u_star,
                                 double amplitude, double T, double dt,
                                 std::uint64_t seed) {
  if (amplitude == 0.0) return StabilityVerdict::returns;
  const SpectralField u0 =
      u_star + amplitude * random_odd_field(u_star.modes(), seed);
  SpectralField final_state = u_star;
  try {
    ImexStepper stepper(p, u0, dt);
    const int n_steps = std::max(1, static_cast<int>(std::llround(T / dt)));
    for (int n = 0; n < n_steps; ++n) stepper.step();
    final_state = stepper.state();
  } catch (const BlowupDetected&) {
    return StabilityVerdict::departs;
  }
  const double dist = l2_norm(final_state - u_star);
  if (dist < 0.1 * std::abs(amplitude)) return StabilityVerdict::returns;
  if (dist > 10.0 * std::abs(amplitude)) return StabilityVerdict::departs;
  return StabilityVerdict::inconclusive;
}

}  // namespace nks
