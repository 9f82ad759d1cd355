#pragma once

#include <cstdint>
#include <vector>

#include "nks/field.hpp"
#include "nks/operators.hpp"

namespace nks {

struct EnergySample {
  double l2_sq = 0.0;   // ||u||_{L2}^2
  double hr2_sq = 0.0;  // ||u||_{H^{r/2}}^2 (homogeneous)
  double hs2_sq = 0.0;  // ||u||_{H^{s/2}}^2 (homogeneous)
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  std::vector<EnergySample> energies;
};

struct ImexConfig {
  double blowup_cap = 1e6;       // sup-norm guard, not a property of the PDE
  bool nonlinear_enabled = true;  // off: pure diagonal linear flow
};

/// One implicit-trapezoid step on the diagonal linear part with explicit
/// Euler on the transport term; the startup rule of the two-step scheme.
SpectralField imex_step(const ModelParams& p, const SpectralField& u, double dt,
                        const ImexConfig& cfg = {});

/// Second-order IMEX stepper: Crank-Nicolson on Lambda^r - eps Lambda^s
/// (a scalar division per mode) and Adams-Bashforth 2 on -u u_x, with an
/// explicit first step.
class ImexStepper {
 public:
  ImexStepper(ModelParams p, SpectralField u0, double dt, ImexConfig cfg = {});

  /// Advances one dt. Throws BlowupDetected past the amplitude cap.
  void step();

  const SpectralField& state() const { return u_; }
  double time() const { return steps_taken_ * dt_; }
  int steps_taken() const { return steps_taken_; }

 private:
  Eigen::VectorXd nonlinear_coeffs() const;

  ModelParams p_;
  ImexConfig cfg_;
  double dt_;
  int steps_taken_ = 0;
  SpectralField u_;
  Eigen::VectorXd lin_;      // k^r - eps k^s
  Eigen::VectorXd prev_nl_;  // transport term at the previous step
  ProductPlan plan_;
};

EnergySample measure_energies(const ModelParams& p, const SpectralField& u);

/// Steps from u0 to time T (nearest multiple of dt), recording every
/// sample_every-th state plus the initial and final ones.
Trajectory evolve(const ModelParams& p, const SpectralField& u0, double T, double dt,
                  int sample_every, const ImexConfig& cfg = {});

/// Defect of the balance  1/2 d/dt ||u||_{L2}^2 + eps ||u||_{H^{s/2}}^2
/// = ||u||_{H^{r/2}}^2  at interior samples, with the time derivative taken
/// by centered differences. O(dt^2) plus sampling error for valid runs.
std::vector<double> energy_balance_residual(const Trajectory& traj, double eps);

enum class StabilityVerdict { returns, departs, inconclusive };

const char* stability_verdict_name(StabilityVerdict v);

/// Random odd field with a 1/k-decaying spectrum, normalized to unit L2.
SpectralField random_odd_field(int modes, std::uint64_t seed);

/// Perturbs u_star by amplitude * (random unit-L2 odd field), evolves to T,
/// and classifies by the final L2 distance: below 0.1*amplitude returns,
/// above 10*amplitude departs. Numerical blow-up counts as departure.
StabilityVerdict stability_probe(const ModelParams& p, const SpectralField& u_star,
                                 double amplitude, double T, double dt,
                                 std::uint64_t seed);

}  // namespace nks
