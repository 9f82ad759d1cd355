#include "nks/continuation.hpp"

#include <cmath>

#include "nks/bifurcation.hpp"

namespace nks {

Eigen::VectorXd SteadyStateSystem::residual(double eps, const Eigen::VectorXd& x) const {
  const ModelParams p{r_, s_, eps};
  return nks::residual(p, SpectralField(x)).residual.coeffs();
}

Eigen::MatrixXd SteadyStateSystem::state_jacobian(double eps,
                                                  const Eigen::VectorXd& x) const {
  const ModelParams p{r_, s_, eps};
  return nks::jacobian(p, SpectralField(x)).matrix();
}

Eigen::VectorXd SteadyStateSystem::eps_jacobian(double /*eps*/,
                                                const Eigen::VectorXd& x) const {
  return -lambda_apply(s_, SpectralField(x)).coeffs();
}

double SteadyStateSystem::residual_inf_norm(const Eigen::VectorXd& f) const {
  return linf_norm(SpectralField(f));
}

double SteadyStateSystem::state_weight() const { return std::numbers::pi; }

namespace {

double weighted_inner(const ContinuationSystem& sys, const Tangent& a,
                      const Tangent& b) {
  return a.d_eps * b.d_eps + sys.state_weight() * a.d_x.dot(b.d_x);
}

}  // namespace

Tangent compute_tangent(const ContinuationSystem& sys, double eps,
                        const Eigen::VectorXd& x, const Tangent* previous) {
  const int m = sys.dim();
  Eigen::MatrixXd bordered(m, m + 1);
  bordered.leftCols(m) = sys.state_jacobian(eps, x);
  bordered.col(m) = sys.eps_jacobian(eps, x);

  Eigen::BDCSVD<Eigen::MatrixXd> svd(bordered, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(m - 1) < 1e-10 * sv(0))
    throw RankDeficient("tangent: bordered system singular (bifurcation point)");

  Tangent t;
  t.d_x = svd.matrixV().col(m).head(m);
  t.d_eps = svd.matrixV()(m, m);
  const double norm = std::sqrt(weighted_inner(sys, t, t));
  t.d_x /= norm;
  t.d_eps /= norm;
  if (previous && weighted_inner(sys, t, *previous) < 0.0) {
    t.d_x = -t.d_x;
    t.d_eps = -t.d_eps;
  }
  return t;
}

CorrectorResult keller_correct(const ContinuationSystem& sys, double eps_pred,
                               const Eigen::VectorXd& x_pred, double eps_base,
                               const Eigen::VectorXd& x_base, const Tangent& tangent,
                               double ds, const NewtonConfig& newton) {
  const int m = sys.dim();
  const double w = sys.state_weight();
  CorrectorResult out{eps_pred, x_pred, StepStatus::no_convergence, 0};

  for (int iter = 0; iter <= newton.max_iter; ++iter) {
    const Eigen::VectorXd f = sys.residual(out.eps, out.x);
    const double constraint = tangent.d_eps * (out.eps - eps_base) +
                              w * tangent.d_x.dot(out.x - x_base) - ds;
    const double err = std::max(sys.residual_inf_norm(f), std::abs(constraint));
    if (err < newton.tol_inf) {
      out.status = StepStatus::converged;
      out.iterations = iter;
      return out;
    }
    if (iter == newton.max_iter) break;

    Eigen::MatrixXd aug(m + 1, m + 1);
    aug.topLeftCorner(m, m) = sys.state_jacobian(out.eps, out.x);
    aug.topRightCorner(m, 1) = sys.eps_jacobian(out.eps, out.x);
    aug.bottomLeftCorner(1, m) = (w * tangent.d_x).transpose();
    aug(m, m) = tangent.d_eps;

    Eigen::VectorXd rhs(m + 1);
    rhs.head(m) = -f;
    rhs(m) = -constraint;

    const Eigen::VectorXd delta = aug.partialPivLu().solve(rhs);
    if (!delta.allFinite() || delta.norm() > 1e10) break;
    out.x += delta.head(m);
    out.eps += delta(m);
  }
  out.status = StepStatus::no_convergence;
  return out;
}

void ContinuationConfig::validate() const {
  if (!(ds_min > 0.0)) throw std::invalid_argument("continuation.ds_min: require > 0");
  if (!(ds_min <= ds0 && ds0 <= ds_max))
    throw std::invalid_argument("continuation.ds0: require ds_min <= ds0 <= ds_max");
  if (!(eps_floor >= 0.0))
    throw std::invalid_argument("continuation.eps_floor: require >= 0");
  if (max_steps < 0) throw std::invalid_argument("continuation.max_steps: require >= 0");
  if (modes < 1) throw std::invalid_argument("continuation.modes: require >= 1");
  if (!(newton.tol_inf > 0.0))
    throw std::invalid_argument("continuation.newton_tol: require > 0");
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::left_domain: return "left_domain";
    case Termination::max_steps: return "max_steps";
    case Termination::step_underflow: return "step_underflow";
    case Termination::hit_trivial: return "hit_trivial";
    case Termination::instability_detected: return "instability_detected";
  }
  return "unknown";
}

BranchPoint make_branch_point(double r, double s, double eps, const SpectralField& u,
                              double arclength) {
  BranchPoint pt;
  pt.eps = eps;
  pt.u = u;
  pt.arclength = arclength;
  pt.l2 = l2_norm(u);
  const ModelParams p{r, s, eps};
  pt.jac_min_sv = jacobian(p, u).smallest_singular_value();
  pt.zero_count = (linf_norm(u) > 1e-10) ? count_zeros(u) : 0;
  return pt;
}

Branch trace_branch(double r, double s, const SeedPoint& seed,
                    const ContinuationConfig& cfg, int seed_k, double seed_sigma) {
  cfg.validate();
  Branch branch;
  branch.r = r;
  branch.s = s;
  branch.modes = seed.u.modes();
  branch.seed_k = seed_k;
  branch.seed_sigma = seed_sigma;
  branch.newton_tol = cfg.newton.tol_inf;

  const SteadyStateSystem sys(r, s, branch.modes);
  const int tail_cutoff = static_cast<int>(cfg.tail_mode_fraction * branch.modes);
  // A trace that starts on the trivial branch is allowed to stay there;
  // only traces of nontrivial solutions terminate on reconnection to u = 0.
  const bool seed_trivial = l2_norm(seed.u) < cfg.hit_trivial_tol;

  branch.points.push_back(make_branch_point(r, s, seed.eps, seed.u, 0.0));

  Tangent tan;
  try {
    tan = compute_tangent(sys, seed.eps, seed.u.coeffs(), &seed.tangent);
  } catch (const RankDeficient&) {
    tan = seed.tangent;  // seed sits on a singularity; trust the supplied direction
  }

  double ds = cfg.ds0;
  int successes = 0;
  branch.termination = Termination::max_steps;

  for (int step = 0; step < cfg.max_steps;) {
    const BranchPoint& base = branch.points.back();
    const double eps_pred = base.eps + ds * tan.d_eps;
    const Eigen::VectorXd x_pred = base.u.coeffs() + ds * tan.d_x;

    const CorrectorResult res = keller_correct(sys, eps_pred, x_pred, base.eps,
                                               base.u.coeffs(), tan, ds, cfg.newton);
    ++step;

    bool accepted = false;
    if (res.status == StepStatus::converged) {
      try {
        const Tangent next = compute_tangent(sys, res.eps, res.x, &tan);
        const SpectralField u_new{res.x};

        if (!seed_trivial && l2_norm(u_new) < cfg.hit_trivial_tol) {
          branch.termination = Termination::hit_trivial;
          return branch;
        }
        if (high_mode_energy_fraction(u_new, s / 2.0, tail_cutoff) >
            cfg.tail_energy_limit) {
          branch.termination = Termination::instability_detected;
          return branch;
        }

        branch.points.push_back(
            make_branch_point(r, s, res.eps, u_new, base.arclength + ds));
        tan = next;
        accepted = true;

        if (res.eps < cfg.eps_floor) {
          branch.termination = Termination::left_domain;
          return branch;
        }
      } catch (const RankDeficient&) {
        // landed on (or numerically at) a singular point: retreat like a
        // failed step so the next attempt straddles it
      }
    }

    if (accepted) {
      if (++successes >= 3) {
        ds = std::min(ds * 1.3, cfg.ds_max);
        successes = 0;
      }
    } else {
      successes = 0;
      ds *= 0.5;
      if (ds < cfg.ds_min) {
        branch.termination = Termination::step_underflow;
        return branch;
      }
    }
  }
  branch.termination = Termination::max_steps;
  return branch;
}

Tangent branch_tangent(const ModelParams& p, const SpectralField& u,
                       const Tangent* previous) {
  const SteadyStateSystem sys(p.r, p.s, u.modes());
  return compute_tangent(sys, p.eps, u.coeffs(), previous);
}

}  // namespace nks
