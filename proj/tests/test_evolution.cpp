#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nks/evolution.hpp"
#include "nks/steady_state.hpp"
#include "oracles.hpp"

using namespace nks;

namespace {

// scalar trapezoid factor for y' = lambda y
double cn_factor(double lambda, double dt) {
  return (1.0 + 0.5 * dt * lambda) / (1.0 - 0.5 * dt * lambda);
}

}  // namespace

TEST_CASE("linear-only stepping matches the scalar rule per mode") {
  const ModelParams p{0.5, 1.5, 0.9};
  const int k = 3;
  const double dt = 1e-2;
  const double lambda = std::pow(k, p.r) - p.eps * std::pow(k, p.s);
  ImexConfig cfg;
  cfg.nonlinear_enabled = false;

  SUBCASE("single step") {
    const SpectralField u1 = imex_step(p, SpectralField::single_mode(8, k), dt, cfg);
    CHECK(u1.coeff(k) == doctest::Approx(cn_factor(lambda, dt)).epsilon(1e-14));
  }
  SUBCASE("stepper over many steps") {
    ImexStepper stepper(p, SpectralField::single_mode(8, k), dt, cfg);
    for (int n = 0; n < 50; ++n) stepper.step();
    CHECK(stepper.state().coeff(k) ==
          doctest::Approx(std::pow(cn_factor(lambda, dt), 50)).epsilon(1e-12));
    for (int m = 1; m <= 8; ++m)
      if (m != k) CHECK(stepper.state().coeff(m) == 0.0);
  }
}

TEST_CASE("zero data stays zero") {
  const ModelParams p{0.5, 1.5, 0.9};
  const Trajectory traj = evolve(p, SpectralField::zero(8), 0.1, 1e-2, 2);
  for (const auto& st : traj.states) CHECK(l2_norm(st) == 0.0);
  for (const auto& e : traj.energies) CHECK(e.l2_sq == 0.0);
}

TEST_CASE("second-order self-convergence of the stepper") {
  const ModelParams p{0.5, 1.5, 0.9};
  SpectralField u0 = SpectralField::zero(32);
  u0.coeff(1) = 0.1;
  u0.coeff(2) = 0.05;
  const double T = 0.5;

  auto final_state = [&](double dt) {
    ImexStepper st(p, u0, dt);
    const int n = static_cast<int>(std::llround(T / dt));
    for (int i = 0; i < n; ++i) st.step();
    return st.state();
  };

  const SpectralField ref = final_state(2e-3 / 64.0);
  const double e1 = l2_norm(final_state(2e-3) - ref);
  const double e2 = l2_norm(final_state(1e-3) - ref);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("for eps > 1 the L2 norm decays monotonically to zero") {
  const ModelParams p{0.5, 1.5, 1.2};
  const SpectralField u0 = 0.01 * random_odd_field(32, 20240801);
  const Trajectory traj = evolve(p, u0, 80.0, 5e-3, 200);
  for (std::size_t i = 1; i < traj.energies.size(); ++i)
    CHECK(traj.energies[i].l2_sq <=
          traj.energies[i - 1].l2_sq * (1.0 + 1e-10) + 1e-300);
  CHECK(std::sqrt(traj.energies.back().l2_sq) < 1e-8);
}

TEST_CASE("trajectory energies are consistent with states") {
  const ModelParams p{0.5, 1.5, 0.9};
  SpectralField u0 = SpectralField::zero(16);
  u0.coeff(1) = 0.3;
  const Trajectory traj = evolve(p, u0, 0.2, 1e-2, 5);
  CHECK(traj.times.size() == traj.states.size());
  CHECK(traj.times.size() == traj.energies.size());
  for (std::size_t i = 1; i < traj.times.size(); ++i)
    CHECK(traj.times[i] > traj.times[i - 1]);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double l2 = l2_norm(traj.states[i]);
    CHECK(traj.energies[i].l2_sq == doctest::Approx(l2 * l2).epsilon(1e-10));
  }
}

TEST_CASE("evolution approaches the continuation steady state at eps = 0.9") {
  const ModelParams p{0.5, 1.5, 0.9};
  const int modes = 32;
  const NewtonResult steady =
      newton_solve(p, SpectralField::single_mode(modes, 1, 0.75), {1e-12, 30, false});
  REQUIRE(steady.converged());

  SpectralField u0 = SpectralField::zero(modes);
  u0.coeff(1) = 0.1;
  const Trajectory traj = evolve(p, u0, 80.0, 2e-3, 1000);
  CHECK(l2_norm(traj.states.back() - steady.u) < 1e-4);
}

TEST_CASE("a converged steady state is a fixed point of the stepper") {
  const ModelParams p{0.5, 1.5, 0.9};
  const NewtonResult steady =
      newton_solve(p, SpectralField::single_mode(32, 1, 0.75), {1e-12, 30, false});
  REQUIRE(steady.converged());
  ImexStepper st(p, steady.u, 1e-3);
  for (int n = 0; n < 1000; ++n) st.step();
  CHECK(l2_norm(st.state() - steady.u) < 1e-6);
}

TEST_CASE("energy balance residual") {
  const ModelParams p{0.5, 1.5, 0.9};

  SUBCASE("identically zero on the zero trajectory") {
    const Trajectory traj = evolve(p, SpectralField::zero(8), 0.1, 1e-2, 1);
    for (double rres : energy_balance_residual(traj, p.eps)) CHECK(rres == 0.0);
  }

  SUBCASE("matches the scalar computation for linear single-mode flow") {
    const int k = 2;
    const double dt = 1e-2;
    ImexConfig cfg;
    cfg.nonlinear_enabled = false;
    const Trajectory traj = evolve(p, SpectralField::single_mode(8, k), 0.2, dt, 1, cfg);
    const auto res = energy_balance_residual(traj, p.eps);

    const double lambda = std::pow(k, p.r) - p.eps * std::pow(k, p.s);
    const double g = cn_factor(lambda, dt);
    // scalar replica of the recorded samples
    std::vector<double> amp;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      amp.push_back(std::pow(g, double(i)));
    for (std::size_t i = 1; i + 1 < amp.size(); ++i) {
      const double e = oracle::kPi * amp[i] * amp[i];
      const double de = oracle::kPi * (amp[i + 1] * amp[i + 1] - amp[i - 1] * amp[i - 1]) /
                        (2.0 * dt);
      const double expected = std::abs(
          0.5 * de + p.eps * std::pow(k, p.s) * e - std::pow(k, p.r) * e);
      CHECK(res[i - 1] == doctest::Approx(expected).epsilon(1e-10));
    }
  }

  SUBCASE("O(dt^2) refinement on a nonlinear run") {
    SpectralField u0 = SpectralField::zero(16);
    u0.coeff(1) = 0.3;
    u0.coeff(2) = 0.1;
    auto worst = [&](double dt) {
      const Trajectory traj = evolve(p, u0, 0.5, dt, 4);
      double m = 0.0;
      for (double rres : energy_balance_residual(traj, p.eps)) m = std::max(m, rres);
      return m;
    };
    const double ratio = worst(4e-3) / worst(2e-3);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.25));
  }
}

TEST_CASE("parity is preserved along trajectories") {
  const ModelParams p{0.5, 1.5, 0.7};
  SpectralField u0 = SpectralField::zero(16);
  u0.coeff(1) = 0.4;
  u0.coeff(3) = 0.2;
  const Trajectory traj = evolve(p, u0, 1.0, 1e-2, 20);
  const int grid = 128;
  const Eigen::VectorXd vals = to_physical(traj.states.back(), grid);
  for (int j = 1; j < grid; ++j)
    CHECK(std::abs(vals[j] + vals[grid - j]) <= 1e-12 * (1.0 + vals.cwiseAbs().maxCoeff()));
}

TEST_CASE("stability probe classifies the trivial state by eps") {
  const int modes = 32;
  const SpectralField zero = SpectralField::zero(modes);
  SUBCASE("stable for large eps") {
    const ModelParams p{0.5, 1.5, 1.5};
    CHECK(stability_probe(p, zero, 1e-3, 20.0, 2e-3, 99) == StabilityVerdict::returns);
  }
  SUBCASE("unstable below sigma_1") {
    const ModelParams p{0.5, 1.5, 0.5};
    CHECK(stability_probe(p, zero, 1e-3, 20.0, 2e-3, 99) == StabilityVerdict::departs);
  }
  SUBCASE("zero amplitude returns trivially") {
    const ModelParams p{0.5, 1.5, 0.5};
    CHECK(stability_probe(p, zero, 0.0, 1.0, 1e-2, 99) == StabilityVerdict::returns);
  }
  SUBCASE("slow decay over a short horizon is inconclusive") {
    // at eps = 1.02 the slowest mode decays like exp(-0.02 t): after t = 20
    // the perturbation is neither 10x smaller nor 10x larger
    const ModelParams p{0.5, 1.5, 1.02};
    CHECK(stability_probe(p, zero, 1e-3, 20.0, 2e-3, 99) ==
          StabilityVerdict::inconclusive);
  }
  SUBCASE("deterministic under a fixed seed") {
    const ModelParams p{0.5, 1.5, 1.5};
    const SpectralField a = random_odd_field(modes, 1234);
    const SpectralField b = random_odd_field(modes, 1234);
    CHECK((a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("blow-up guard throws instead of producing garbage") {
  const ModelParams p{0.5, 1.5, 0.2};
  ImexConfig cfg;
  cfg.blowup_cap = 10.0;
  ImexStepper st(p, SpectralField::single_mode(16, 1, 3.0), 0.5, cfg);
  CHECK_THROWS_AS(
      [&] {
        for (int n = 0; n < 100; ++n) st.step();
      }(),
      BlowupDetected);
}

TEST_CASE("evolve validates its arguments") {
  const ModelParams p{0.5, 1.5, 0.9};
  CHECK_THROWS_AS(evolve(p, SpectralField::zero(4), -1.0, 1e-2, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(evolve(p, SpectralField::zero(4), 1.0, 1e-2, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(imex_step(p, SpectralField::zero(4), 0.0), std::invalid_argument);
}
