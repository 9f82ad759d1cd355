#pragma once

#include <vector>

#include "nks/continuation.hpp"

namespace nks {

/// Analytic datum of a trivial-branch bifurcation point: the linearization
/// diag(k^r - eps k^s) is singular at sigma = k^{r-s} with kernel sin(kx).
struct BifurcationPoint {
  int k = 0;
  double sigma = 0.0;
  SpectralField eigenfunction;  // sin(kx)
  double ddot_omega = 0.0;      // curvature of the local branch at t = 0
  SpectralField phi;            // second-order corrector, single mode at 2k
};

/// Bifurcation values sigma_k = k^{r-s}, k = 1..k_max, with eigenfunctions
/// represented at the given mode count. phi is left zero when 2k exceeds
/// the mode count.
std::vector<BifurcationPoint> trivial_spectrum(double r, double s, int k_max,
                                               int modes);

struct BifurcationDirection {
  double omega_dot = 0.0;
  double omega_ddot = 0.0;
};

/// Local branch direction at (sigma_k, 0): omega_dot = 0 and
/// omega_ddot = k^{2-s-r} / (2^{r+1} (1 - 2^{s-r})), negative for all
/// admissible (k, r, s), so every bifurcation is subcritical.
BifurcationDirection bifurcation_direction(int k, double r, double s);

/// phi_k = k^{1-r} / (2^r (1 - 2^{s-r})) * sin(2kx), the unique solution of
/// Lambda^r phi - sigma_k Lambda^s phi = k sin(2kx) with no mode-k content.
SpectralField second_order_corrector(int k, double r, double s, int modes);

/// Second-order local expansion of the branch through (sigma_k, 0):
///   eps(t) = sigma + ddot_omega t^2 / 2,  u(t) = t e_k + t^2/2 phi_k,
/// with the tangent pointing along increasing |t|. The returned point is a
/// predictor and is Newton-corrected by callers before use.
SeedPoint seed_from_bifurcation(const BifurcationPoint& bp, double t);

/// Sign changes of u over a 16M-point grid on [-pi, pi) including the
/// periodic wrap. Zeros of even multiplicity are invisible to sign counting.
/// Throws DegenerateField when the grid amplitude is below 1e-10.
int count_zeros(const SpectralField& u);

/// L2 pairing <-Lambda^s sin(kx), sin(kx)> / ||sin(kx)||^2, equal to -k^s.
/// A nonzero value certifies 1-transversality of sigma_k (and hence unit
/// algebraic multiplicity).
double transversality_check(int k, double r, double s);

/// Indices of recorded points where the smallest singular value of d_u F
/// drops below 1e-6 times the branch median, or where the determinant sign
/// of d_u F flips between consecutive points. Reported for logging only;
/// no branch switching is attempted.
std::vector<int> detect_singularities(const Branch& branch);

}  // namespace nks
