#include "nks/bifurcation.hpp"

#include <algorithm>
#include <cmath>

namespace nks {

namespace {

void check_exponents(double r, double s) {
  if (!(s > 1.0)) throw std::invalid_argument("bifurcation: require s > 1");
  if (!(r < s)) throw std::invalid_argument("bifurcation: require r < s");
}

}  // namespace

std::vector<BifurcationPoint> trivial_spectrum(double r, double s, int k_max,
                                               int modes) {
  check_exponents(r, s);
  if (k_max < 1) throw std::invalid_argument("trivial_spectrum: require k_max >= 1");
  if (modes < k_max)
    throw std::invalid_argument("trivial_spectrum: modes must cover k_max");

  std::vector<BifurcationPoint> out;
  out.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    BifurcationPoint bp;
    bp.k = k;
    bp.sigma = std::pow(double(k), r - s);
    bp.eigenfunction = SpectralField::single_mode(modes, k);
    bp.ddot_omega = bifurcation_direction(k, r, s).omega_ddot;
    bp.phi = (2 * k <= modes) ? second_order_corrector(k, r, s, modes)
                              : SpectralField::zero(modes);
    out.push_back(std::move(bp));
  }
  return out;
}

BifurcationDirection bifurcation_direction(int k, double r, double s) {
  check_exponents(r, s);
  const double omega_ddot = std::pow(double(k), 2.0 - s - r) /
                            (std::pow(2.0, r + 1.0) * (1.0 - std::pow(2.0, s - r)));
  return {0.0, omega_ddot};
}

SpectralField second_order_corrector(int k, double r, double s, int modes) {
  check_exponents(r, s);
  if (modes < 2 * k)
    throw std::invalid_argument("second_order_corrector: modes must cover 2k");
  const double coeff = std::pow(double(k), 1.0 - r) /
                       (std::pow(2.0, r) * (1.0 - std::pow(2.0, s - r)));
  return SpectralField::single_mode(modes, 2 * k, coeff);
}

SeedPoint seed_from_bifurcation(const BifurcationPoint& bp, double t) {
  SeedPoint seed;
  seed.eps = bp.sigma + 0.5 * bp.ddot_omega * t * t;
  seed.u = t * bp.eigenfunction + (0.5 * t * t) * bp.phi;

  // d(eps, u)/dt = (ddot_omega * t, e_k + t * phi); flip by sign(t) so the
  // direction points away from the bifurcation point on either half-branch.
  const double sgn = (t < 0.0) ? -1.0 : 1.0;
  Tangent tan;
  tan.d_eps = sgn * bp.ddot_omega * t;
  tan.d_x = sgn * (bp.eigenfunction.coeffs() + t * bp.phi.coeffs());
  const double norm =
      std::sqrt(tan.d_eps * tan.d_eps + std::numbers::pi * tan.d_x.squaredNorm());
  if (norm > 0.0) {
    tan.d_eps /= norm;
    tan.d_x /= norm;
  }
  seed.tangent = std::move(tan);
  return seed;
}

int count_zeros(const SpectralField& u) {
  if (u.modes() == 0) throw DegenerateField("count_zeros: empty field");
  const Eigen::VectorXd vals = to_physical(u, 16 * u.modes());
  const double amax = vals.cwiseAbs().maxCoeff();
  if (amax <= 1e-10) throw DegenerateField("count_zeros: amplitude below 1e-10");

  // Samples indistinguishable from zero are skipped; sign changes are then
  // counted cyclically around the torus.
  const double thresh = 1e-12 * amax;
  std::vector<int> signs;
  signs.reserve(vals.size());
  for (Eigen::Index j = 0; j < vals.size(); ++j) {
    if (std::abs(vals[j]) > thresh) signs.push_back(vals[j] > 0.0 ? 1 : -1);
  }
  if (signs.size() < 2) throw DegenerateField("count_zeros: too few usable samples");
  int changes = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
  }
  return changes;
}

double transversality_check(int k, double r, double s) {
  check_exponents(r, s);
  if (k < 1) throw std::invalid_argument("transversality_check: require k >= 1");
  const SpectralField e = SpectralField::single_mode(k, k);
  return -l2_inner(lambda_apply(s, e), e) / l2_inner(e, e);
}

namespace {

int determinant_sign(const Branch& branch, const BranchPoint& pt) {
  const ModelParams p{branch.r, branch.s, pt.eps};
  const Eigen::MatrixXd jac = jacobian(p, pt.u).matrix();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
  int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
  for (Eigen::Index i = 0; i < jac.rows(); ++i) {
    const double d = lu.matrixLU()(i, i);
    if (d == 0.0) return 0;
    if (d < 0.0) sign = -sign;
  }
  return sign;
}

}  // namespace

std::vector<int> detect_singularities(const Branch& branch) {
  const auto& pts = branch.points;
  if (pts.size() < 2) return {};

  std::vector<double> sv;
  sv.reserve(pts.size());
  for (const auto& pt : pts) sv.push_back(pt.jac_min_sv);
  std::vector<double> sorted = sv;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];

  std::vector<int> flags;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (sv[i] < 1e-6 * median) flags.push_back(static_cast<int>(i));
  }

  int prev_sign = determinant_sign(branch, pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const int sign = determinant_sign(branch, pts[i]);
    if (sign == 0 || (prev_sign != 0 && sign != prev_sign))
      flags.push_back(static_cast<int>(i));
    prev_sign = sign;
  }

  std::sort(flags.begin(), flags.end());
  flags.erase(std::unique(flags.begin(), flags.end()), flags.end());
  return flags;
}

}  // namespace nks
