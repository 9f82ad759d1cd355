#include "nks/field.hpp"

namespace nks {

void ModelParams::validate() const {
  if (!(s > 1.0)) throw std::invalid_argument("ModelParams.s: require s > 1");
  if (!(r >= -1.0 && r < s))
    throw std::invalid_argument("ModelParams.r: require r in [-1, s)");
  if (!(eps > 0.0)) throw std::invalid_argument("ModelParams.eps: require eps > 0");
}

SpectralField::SpectralField(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) {
  if (!coeffs_.allFinite())
    throw std::invalid_argument("SpectralField: non-finite coefficient");
}

SpectralField SpectralField::zero(int modes) {
  return SpectralField(Eigen::VectorXd::Zero(modes));
}

SpectralField SpectralField::single_mode(int modes, int k, double amplitude) {
  if (k < 1 || k > modes)
    throw std::invalid_argument("SpectralField::single_mode: k out of range");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(modes);
  c[k - 1] = amplitude;
  return SpectralField(std::move(c));
}

SpectralField SpectralField::resized(int modes) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(modes);
  const int n = std::min(modes, this->modes());
  c.head(n) = coeffs_.head(n);
  return SpectralField(std::move(c));
}

SpectralField& SpectralField::operator+=(const SpectralField& rhs) {
  if (rhs.modes() != modes())
    throw std::invalid_argument("SpectralField: mode counts differ; resize first");
  coeffs_ += rhs.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& rhs) {
  if (rhs.modes() != modes())
    throw std::invalid_argument("SpectralField: mode counts differ; resize first");
  coeffs_ -= rhs.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  coeffs_ *= c;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double c, SpectralField a) { return a *= c; }

CosineField::CosineField(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) {
  if (!coeffs_.allFinite())
    throw std::invalid_argument("CosineField: non-finite coefficient");
}

}  // namespace nks
