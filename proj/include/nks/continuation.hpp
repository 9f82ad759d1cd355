#pragma once

#include <vector>

#include "nks/steady_state.hpp"

namespace nks {

/// Direction (d_x, d_eps) along a solution curve of F(eps, x) = 0, unit
/// length in the weighted metric d_eps^2 + w * |d_x|^2 (w = state_weight of
/// the system; pi for the PDE, so the x-part is measured in L2).
struct Tangent {
  double d_eps = 0.0;
  Eigen::VectorXd d_x;
};

/// A parameter-dependent nonlinear system presented to the arclength
/// continuation core as flat coefficient vectors.
class ContinuationSystem {
 public:
  virtual ~ContinuationSystem() = default;

  virtual int dim() const = 0;
  virtual Eigen::VectorXd residual(double eps, const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXd state_jacobian(double eps, const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd eps_jacobian(double eps, const Eigen::VectorXd& x) const = 0;

  /// Norm used by the Newton stopping rule; default is the sup of the
  /// coefficients.
  virtual double residual_inf_norm(const Eigen::VectorXd& f) const {
    return f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  }

  /// Weight of the state block in the (x, eps) inner product.
  virtual double state_weight() const { return 1.0; }
};

/// The steady-state problem F(eps, u) = Lambda^r u - eps Lambda^s u - u u_x
/// in sine coefficients, with the sup norm taken over the physical grid and
/// the state metric equal to the L2 norm.
class SteadyStateSystem final : public ContinuationSystem {
 public:
  SteadyStateSystem(double r, double s, int modes) : r_(r), s_(s), modes_(modes) {}

  int dim() const override { return modes_; }
  Eigen::VectorXd residual(double eps, const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd state_jacobian(double eps, const Eigen::VectorXd& x) const override;
  Eigen::VectorXd eps_jacobian(double eps, const Eigen::VectorXd& x) const override;
  double residual_inf_norm(const Eigen::VectorXd& f) const override;
  double state_weight() const override;

  double r() const { return r_; }
  double s() const { return s_; }

 private:
  double r_, s_;
  int modes_;
};

/// Unit vector spanning the null space of the dim x (dim+1) bordered matrix
/// [d_x F | d_eps F], oriented along `previous` when supplied. Throws
/// RankDeficient when the matrix loses rank beyond tolerance, i.e. at a
/// bifurcation point of the branch.
Tangent compute_tangent(const ContinuationSystem& sys, double eps,
                        const Eigen::VectorXd& x, const Tangent* previous = nullptr);

enum class StepStatus { converged, no_convergence };

struct CorrectorResult {
  double eps = 0.0;
  Eigen::VectorXd x;
  StepStatus status = StepStatus::no_convergence;
  int iterations = 0;
};

/// Newton iteration on the square augmented system
///   F(eps, x) = 0,
///   <(x, eps) - (x_base, eps_base), tangent>_w - ds = 0,
/// started from the predictor (x_pred, eps_pred). Regular at turning points
/// by construction.
CorrectorResult keller_correct(const ContinuationSystem& sys, double eps_pred,
                               const Eigen::VectorXd& x_pred, double eps_base,
                               const Eigen::VectorXd& x_base, const Tangent& tangent,
                               double ds, const NewtonConfig& newton);

/// One converged point of a traced branch with its running diagnostics.
struct BranchPoint {
  double eps = 0.0;
  SpectralField u;
  double arclength = 0.0;
  double l2 = 0.0;
  double jac_min_sv = 0.0;  // smallest singular value of d_u F
  int zero_count = 0;       // 0 for (near-)trivial points
};

enum class Termination {
  left_domain,
  max_steps,
  step_underflow,
  hit_trivial,
  instability_detected,
};

struct Branch {
  double r = 0.0;
  double s = 0.0;
  int modes = 0;
  int seed_k = 0;  // bifurcation-point index the trace started from; 0 = none
  double seed_sigma = 0.0;
  double newton_tol = 1e-10;  // corrector tolerance the points satisfy
  std::vector<BranchPoint> points;
  Termination termination = Termination::max_steps;
};

const char* termination_name(Termination t);

struct ContinuationConfig {
  double ds0 = 0.02;
  double ds_min = 1e-6;
  double ds_max = 0.05;
  NewtonConfig newton{1e-10, 25, false};
  int max_steps = 2000;
  double eps_floor = 0.12;
  int modes = 128;
  /// Instability stop: fraction of the H^{s/2} seminorm energy carried by
  /// the top tenth of the mode range that flags a trace as under-resolved.
  double tail_energy_limit = 0.01;
  double tail_mode_fraction = 0.9;
  double hit_trivial_tol = 1e-9;

  void validate() const;  // throws std::invalid_argument naming the field
};

/// Converged starting point for a trace together with its outgoing direction.
struct SeedPoint {
  double eps = 0.0;
  SpectralField u;
  Tangent tangent;
};

/// Assembles a BranchPoint at a converged (eps, u), computing the recorded
/// diagnostics (L2 norm, smallest singular value of d_u F, zero count).
BranchPoint make_branch_point(double r, double s, double eps, const SpectralField& u,
                              double arclength);

/// Predictor-corrector trace with adaptive step control: halve on failure,
/// grow by 1.3 after 3 straight successes, clamp to [ds_min, ds_max].
/// Never throws for step failures; the reason ends up in the termination tag.
Branch trace_branch(double r, double s, const SeedPoint& seed,
                    const ContinuationConfig& cfg, int seed_k = 0,
                    double seed_sigma = 0.0);

/// PDE-facing tangent at a converged branch point.
Tangent branch_tangent(const ModelParams& p, const SpectralField& u,
                       const Tangent* previous = nullptr);

}  // namespace nks
