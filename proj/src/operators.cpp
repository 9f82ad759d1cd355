#include "nks/operators.hpp"

#include <cmath>
#include <numbers>

namespace nks {

namespace {

constexpr double kPi = std::numbers::pi;

// Fills S(j,k-1) = sin(k x_j), C(j,k-1) = cos(k x_j) for x_j = x0 + j*h.
// Each column is generated by complex rotation, re-anchored periodically so
// rounding drift stays near machine precision.
void fill_trig_tables(int n, int modes, double x0, double h, Eigen::MatrixXd& S,
                      Eigen::MatrixXd& C) {
  S.resize(n, modes);
  C.resize(n, modes);
  for (int k = 1; k <= modes; ++k) {
    const double wr = std::cos(k * h);
    const double wi = std::sin(k * h);
    double zr = 0.0, zi = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j % 128 == 0) {
        zr = std::cos(k * (x0 + j * h));
        zi = std::sin(k * (x0 + j * h));
      }
      C(j, k - 1) = zr;
      S(j, k - 1) = zi;
      const double nzr = zr * wr - zi * wi;
      zi = zr * wi + zi * wr;
      zr = nzr;
    }
  }
}

}  // namespace

ProductPlan::ProductPlan(int modes) : modes_(modes) {
  // 2x padding: products of two M-mode factors hold modes up to 2M, and the
  // interior sine grid with P = 2M nodes integrates those exactly.
  const int grid = 2 * modes;
  const double h = kPi / (grid + 1);
  fill_trig_tables(grid, modes, h, h, sine_, cosine_);
  analysis_scale_ = 2.0 / (grid + 1);
}

Eigen::VectorXd ProductPlan::sine_values(const SpectralField& u) const {
  return sine_ * u.coeffs();
}

Eigen::VectorXd ProductPlan::cosine_values(const CosineField& v) const {
  return cosine_ * v.coeffs();
}

Eigen::VectorXd ProductPlan::analyze(const Eigen::VectorXd& grid_values) const {
  return analysis_scale_ * (sine_.transpose() * grid_values);
}

SpectralField lambda_apply(double alpha, const SpectralField& u) {
  Eigen::VectorXd c = u.coeffs();
  for (int k = 1; k <= u.modes(); ++k) c[k - 1] *= std::pow(double(k), alpha);
  return SpectralField(std::move(c));
}

CosineField derivative(const SpectralField& u) {
  Eigen::VectorXd c = u.coeffs();
  for (int k = 1; k <= u.modes(); ++k) c[k - 1] *= k;
  return CosineField(std::move(c));
}

SpectralField nonlinear_term(const SpectralField& u) {
  const ProductPlan plan(u.modes());
  const Eigen::VectorXd uj = plan.sine_values(u);
  const Eigen::VectorXd uxj = plan.cosine_values(derivative(u));
  return SpectralField(plan.analyze(uj.cwiseProduct(uxj)));
}

SpectralField advect(const SpectralField& u, const SpectralField& v) {
  if (u.modes() != v.modes())
    throw std::invalid_argument("advect: mode counts differ");
  const ProductPlan plan(u.modes());
  const Eigen::VectorXd uj = plan.sine_values(u);
  const Eigen::VectorXd uxj = plan.cosine_values(derivative(u));
  const Eigen::VectorXd vj = plan.sine_values(v);
  const Eigen::VectorXd vxj = plan.cosine_values(derivative(v));
  return SpectralField(plan.analyze(uxj.cwiseProduct(vj) + uj.cwiseProduct(vxj)));
}

double sobolev_seminorm(const SpectralField& u, double t) {
  double sum = 0.0;
  for (int k = 1; k <= u.modes(); ++k) {
    const double a = u.coeff(k);
    sum += std::pow(double(k), 2.0 * t) * a * a;
  }
  return std::sqrt(kPi * sum);
}

double l2_norm(const SpectralField& u) { return sobolev_seminorm(u, 0.0); }

double l2_inner(const SpectralField& u, const SpectralField& v) {
  if (u.modes() != v.modes())
    throw std::invalid_argument("l2_inner: mode counts differ");
  return kPi * u.coeffs().dot(v.coeffs());
}

Eigen::VectorXd physical_grid(int n_points) {
  Eigen::VectorXd x(n_points);
  for (int j = 0; j < n_points; ++j) x[j] = -kPi + 2.0 * kPi * j / n_points;
  return x;
}

namespace {

// Dense evaluation over the uniform torus grid; rotation per mode keeps the
// cost at O(n*M) flops instead of O(n*M) trig calls.
Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs, int n_points, bool odd) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_points);
  const double x0 = -kPi;
  const double h = 2.0 * kPi / n_points;
  const int modes = static_cast<int>(coeffs.size());
  for (int k = 1; k <= modes; ++k) {
    const double a = coeffs[k - 1];
    if (a == 0.0) continue;
    const double wr = std::cos(k * h);
    const double wi = std::sin(k * h);
    double zr = 0.0, zi = 0.0;
    for (int j = 0; j < n_points; ++j) {
      if (j % 128 == 0) {
        zr = std::cos(k * (x0 + j * h));
        zi = std::sin(k * (x0 + j * h));
      }
      out[j] += a * (odd ? zi : zr);
      const double nzr = zr * wr - zi * wi;
      zi = zr * wi + zi * wr;
      zr = nzr;
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXd to_physical(const SpectralField& u, int n_points) {
  if (n_points < 2 * u.modes())
    throw std::invalid_argument("to_physical: n_points below Nyquist 2*modes");
  return synthesize(u.coeffs(), n_points, true);
}

Eigen::VectorXd to_physical(const CosineField& v, int n_points) {
  if (n_points < 2 * v.modes())
    throw std::invalid_argument("to_physical: n_points below Nyquist 2*modes");
  return synthesize(v.coeffs(), n_points, false);
}

double linf_norm(const SpectralField& u) {
  if (u.modes() == 0) return 0.0;
  return to_physical(u, 16 * u.modes()).cwiseAbs().maxCoeff();
}

double high_mode_energy_fraction(const SpectralField& u, double t, int cutoff) {
  double total = 0.0, high = 0.0;
  for (int k = 1; k <= u.modes(); ++k) {
    const double a = u.coeff(k);
    const double e = std::pow(double(k), 2.0 * t) * a * a;
    total += e;
    if (k > cutoff) high += e;
  }
  return total > 0.0 ? high / total : 0.0;
}

}  // namespace nks
