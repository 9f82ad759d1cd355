#pragma once

#include "nks/field.hpp"
#include "nks/operators.hpp"

namespace nks {

/// Steady-state residual F(eps, u) = Lambda^r u - eps Lambda^s u - u u_x
/// together with the norms used by stopping rules.
struct ResidualReport {
  SpectralField residual;
  double inf_norm = 0.0;  // sup over the 16M-point sample grid
  double l2_norm = 0.0;
};

ResidualReport residual(const ModelParams& p, const SpectralField& u);

/// Dense Jacobian d_u F(eps, u) acting on sine coefficients. The diagonal
/// is k^r - eps k^s; the advection part -(u v)_x is assembled column by
/// column by applying the operator to each basis mode sin(kx).
class JacobianMatrix {
 public:
  JacobianMatrix(Eigen::MatrixXd mat, ModelParams params, SpectralField base);

  const Eigen::MatrixXd& matrix() const { return mat_; }
  const ModelParams& params() const { return params_; }
  const SpectralField& base_point() const { return base_; }
  int size() const { return static_cast<int>(mat_.rows()); }

  /// Smallest singular value; ~0 exactly at the bifurcation values of the
  /// trivial branch.
  double smallest_singular_value() const;

 private:
  Eigen::MatrixXd mat_;
  ModelParams params_;
  SpectralField base_;
};

JacobianMatrix jacobian(const ModelParams& p, const SpectralField& u);

struct NewtonConfig {
  double tol_inf = 1e-4;  // sup-norm stop on the sampled residual
  int max_iter = 25;
  bool line_search = false;  // Armijo backtracking on ||F||^2
};

enum class NewtonStatus { converged, singular_jacobian, no_convergence };

struct NewtonResult {
  SpectralField u;
  NewtonStatus status = NewtonStatus::no_convergence;
  int iterations = 0;
  double residual_inf = 0.0;

  bool converged() const { return status == NewtonStatus::converged; }
};

/// Plain Newton iteration at fixed eps. A singular linear solve (smallest
/// singular value below 1e-14 * ||J||) reports singular_jacobian, which on
/// the trivial branch marks a bifurcation value reached without arclength
/// parametrization.
NewtonResult newton_solve(const ModelParams& p, const SpectralField& u0,
                          const NewtonConfig& cfg = {});

}  // namespace nks
