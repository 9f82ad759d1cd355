#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace nks {

/// A field that is numerically zero where a nontrivial one is required
/// (zero counting, seminorm ratios).
struct DegenerateField : std::runtime_error {
  explicit DegenerateField(const std::string& msg) : std::runtime_error(msg) {}
};

/// The bordered continuation system is singular beyond tolerance: the point
/// is itself a bifurcation point and has no unique tangent.
struct RankDeficient : std::runtime_error {
  explicit RankDeficient(const std::string& msg) : std::runtime_error(msg) {}
};

/// Time stepping produced samples above the configured amplitude cap,
/// which signals a too-large step size rather than a property of the PDE.
struct BlowupDetected : std::runtime_error {
  explicit BlowupDetected(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameters of the linear operator Lambda^r - eps * Lambda^s.
/// Admissible range: s > 1, r in [-1, s), eps > 0.
struct ModelParams {
  double r = 0.5;
  double s = 1.5;
  double eps = 1.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  ModelParams with_eps(double e) const { return ModelParams{r, s, e}; }
};

/// Odd 2*pi-periodic real function on [-pi, pi] held as sine coefficients,
///   u(x) = sum_{k=1}^{M} a_k sin(k x).
/// There is no k = 0 term, so every field has zero mean by construction.
/// Normalization convention used throughout: ||sin(kx)||_{L2}^2 = pi.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(Eigen::VectorXd coeffs);

  static SpectralField zero(int modes);
  static SpectralField single_mode(int modes, int k, double amplitude = 1.0);

  int modes() const { return static_cast<int>(coeffs_.size()); }
  /// 1-based mode index: coeff(k) multiplies sin(k x).
  double coeff(int k) const { return coeffs_[k - 1]; }
  double& coeff(int k) { return coeffs_[k - 1]; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }

  /// Truncates or zero-pads to the requested mode count.
  SpectralField resized(int modes) const;

  SpectralField& operator+=(const SpectralField& rhs);
  SpectralField& operator-=(const SpectralField& rhs);
  SpectralField& operator*=(double c);

 private:
  Eigen::VectorXd coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double c, SpectralField a);

/// Even 2*pi-periodic function held as cosine coefficients (no constant term),
///   v(x) = sum_{k=1}^{M} b_k cos(k x).
/// Derivatives of odd fields land here; the distinct type keeps even-parity
/// data out of APIs expecting a SpectralField.
class CosineField {
 public:
  CosineField() = default;
  explicit CosineField(Eigen::VectorXd coeffs);

  int modes() const { return static_cast<int>(coeffs_.size()); }
  double coeff(int k) const { return coeffs_[k - 1]; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }

 private:
  Eigen::VectorXd coeffs_;
};

}  // namespace nks
