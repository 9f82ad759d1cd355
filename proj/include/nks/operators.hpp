#pragma once

#include "nks/field.hpp"

namespace nks {

/// Fourier multiplier |k|^alpha acting diagonally on sine coefficients:
/// b_k = k^alpha a_k. Negative alpha is fine since k >= 1.
SpectralField lambda_apply(double alpha, const SpectralField& u);

/// u_x as a cosine series, b_k = k a_k.
CosineField derivative(const SpectralField& u);

/// Galerkin projection of u * u_x onto the first modes(u) sine modes.
/// Evaluated as a dealiased pseudo-spectral product on a 2x zero-padded
/// grid, which is exact for band-limited input up to rounding.
SpectralField nonlinear_term(const SpectralField& u);

/// Galerkin projection of (u v)_x = u_x v + u v_x, the directional
/// derivative of nonlinear_term at u in direction v.
SpectralField advect(const SpectralField& u, const SpectralField& v);

/// Homogeneous Sobolev seminorm sqrt(pi * sum_k k^{2t} a_k^2); t = 0 gives
/// the L2 norm of the (zero-mean) field.
double sobolev_seminorm(const SpectralField& u, double t);
double l2_norm(const SpectralField& u);
double l2_inner(const SpectralField& u, const SpectralField& v);

/// Uniform sample grid x_j = -pi + 2*pi*j/n, j = 0..n-1.
Eigen::VectorXd physical_grid(int n_points);

/// Samples on the uniform grid over [-pi, pi). Requires n_points >= 2*modes.
Eigen::VectorXd to_physical(const SpectralField& u, int n_points);
Eigen::VectorXd to_physical(const CosineField& v, int n_points);

/// Grid sup-norm on 16*modes sample points: a lower bound on the true
/// L-infinity norm, tight to grid resolution.
double linf_norm(const SpectralField& u);

/// Fraction of the H^t seminorm energy carried by modes k > cutoff.
/// Returns 0 for a zero field.
double high_mode_energy_fraction(const SpectralField& u, double t, int cutoff);

/// Sine/cosine tables at the padded product quadrature nodes for a fixed
/// mode count. Building the tables costs O(M^2) trig calls, so hot paths
/// (time stepping, Jacobian assembly) construct one plan and reuse it.
class ProductPlan {
 public:
  explicit ProductPlan(int modes);

  int modes() const { return modes_; }
  int grid_size() const { return static_cast<int>(sine_.rows()); }

  /// Values of u at the quadrature nodes.
  Eigen::VectorXd sine_values(const SpectralField& u) const;
  /// Values of an even (cosine-series) field at the quadrature nodes.
  Eigen::VectorXd cosine_values(const CosineField& v) const;
  /// Sine coefficients 1..modes of a grid function (exact for inputs
  /// band-limited to 2*modes).
  Eigen::VectorXd analyze(const Eigen::VectorXd& grid_values) const;

  const Eigen::MatrixXd& sine_table() const { return sine_; }
  const Eigen::MatrixXd& cosine_table() const { return cosine_; }

 private:
  int modes_ = 0;
  Eigen::MatrixXd sine_;    // sin(k x_j), grid x cols
  Eigen::MatrixXd cosine_;  // cos(k x_j)
  double analysis_scale_ = 0.0;
};

}  // namespace nks
