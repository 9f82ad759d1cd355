#include "nks/steady_state.hpp"

#include <cmath>

namespace nks {

ResidualReport residual(const ModelParams& p, const SpectralField& u) {
  SpectralField f = lambda_apply(p.r, u);
  f -= p.eps * lambda_apply(p.s, u);
  f -= nonlinear_term(u);
  ResidualReport rep{std::move(f), 0.0, 0.0};
  rep.inf_norm = linf_norm(rep.residual);
  rep.l2_norm = l2_norm(rep.residual);
  return rep;
}

JacobianMatrix::JacobianMatrix(Eigen::MatrixXd mat, ModelParams params,
                               SpectralField base)
    : mat_(std::move(mat)), params_(params), base_(std::move(base)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() != base_.modes())
    throw std::invalid_argument("JacobianMatrix: shape mismatch with base point");
  if (!mat_.allFinite())
    throw std::invalid_argument("JacobianMatrix: non-finite entry");
}

double JacobianMatrix::smallest_singular_value() const {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(mat_);
  return svd.singularValues().tail(1)(0);
}

JacobianMatrix jacobian(const ModelParams& p, const SpectralField& u) {
  const int m = u.modes();
  const ProductPlan plan(m);
  const Eigen::VectorXd uj = plan.sine_values(u);
  const Eigen::VectorXd uxj = plan.cosine_values(derivative(u));

  Eigen::MatrixXd jac(m, m);
  for (int k = 1; k <= m; ++k) {
    // advection applied to the basis mode: (u sin(kx))' = u_x sin(kx) + u k cos(kx)
    const Eigen::VectorXd w = uxj.cwiseProduct(plan.sine_table().col(k - 1)) +
                              double(k) * uj.cwiseProduct(plan.cosine_table().col(k - 1));
    jac.col(k - 1) = -plan.analyze(w);
  }
  for (int k = 1; k <= m; ++k)
    jac(k - 1, k - 1) += std::pow(double(k), p.r) - p.eps * std::pow(double(k), p.s);
  return JacobianMatrix(std::move(jac), p, u);
}

NewtonResult newton_solve(const ModelParams& p, const SpectralField& u0,
                          const NewtonConfig& cfg) {
  SpectralField u = u0;
  ResidualReport rep = residual(p, u);
  // Convergence is only declared after at least one corrector solve, so a
  // singular linearization at the starting point is always reported even
  // when the residual happens to vanish there (trivial branch at sigma_k).
  for (int iter = 0; iter <= cfg.max_iter; ++iter) {
    if (iter > 0 && rep.inf_norm < cfg.tol_inf)
      return {std::move(u), NewtonStatus::converged, iter, rep.inf_norm};
    if (iter == cfg.max_iter) break;

    const JacobianMatrix jac = jacobian(p, u);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(jac.matrix(),
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-14 * sv(0))
      return {std::move(u), NewtonStatus::singular_jacobian, iter, rep.inf_norm};

    const Eigen::VectorXd delta = svd.solve(-rep.residual.coeffs());
    if (!delta.allFinite())
      return {std::move(u), NewtonStatus::singular_jacobian, iter, rep.inf_norm};

    if (!cfg.line_search) {
      u += SpectralField(delta);
      rep = residual(p, u);
      continue;
    }

    // Armijo backtracking on ||F||_L2^2; falls back to the full step if no
    // sufficient decrease shows up within 8 halvings.
    const double f0 = rep.l2_norm * rep.l2_norm;
    double lambda = 1.0;
    SpectralField best = u + SpectralField(delta);
    ResidualReport best_rep = residual(p, best);
    for (int cut = 0; cut < 8; ++cut) {
      const double f1 = best_rep.l2_norm * best_rep.l2_norm;
      if (f1 <= (1.0 - 1e-4 * lambda) * f0) break;
      lambda *= 0.5;
      best = u + SpectralField((lambda * delta).eval());
      best_rep = residual(p, best);
    }
    u = std::move(best);
    rep = std::move(best_rep);
  }
  return {std::move(u), NewtonStatus::no_convergence, cfg.max_iter, rep.inf_norm};
}

}  // namespace nks
