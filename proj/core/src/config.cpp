#include "beamk/config.hpp"

#include <cmath>
#include <string>

#include "beamk/errors.hpp"

namespace beamk {

namespace {

void require_positive(double value, const char* name) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw DomainError(std::string("BeamConfig: ") + name + " must be finite and > 0, got " +
                      std::to_string(value));
  }
}

}  // namespace

BeamConfig::BeamConfig(double E, double I, double k, double l) : E_(E), I_(I), k_(k), l_(l) {
  require_positive(E, "E");
  require_positive(I, "I");
  require_positive(k, "k");
  require_positive(l, "l");
  alpha_ = std::sqrt(std::sqrt(k / (E * I)));
  L_ = 2.0 * constants::sqrt2 * l * alpha_;
}

SpectralPoint SpectralPoint::from_lambda(double lambda, double k) {
  if (!(std::isfinite(k) && k > 0.0)) throw DomainError("SpectralPoint: k must be > 0");
  if (!std::isfinite(lambda) || (lambda >= 0.0 && lambda * k <= 1.0)) {
    throw DomainError("SpectralPoint: lambda must lie outside [0, 1/k], got " +
                      std::to_string(lambda));
  }
  const double lk = lambda * k;
  const double kappa4 = (lk - 1.0) / lk;
  return {lambda, std::sqrt(std::sqrt(kappa4)), k};
}

SpectralPoint SpectralPoint::from_kappa(double kappa, double k) {
  if (!(std::isfinite(k) && k > 0.0)) throw DomainError("SpectralPoint: k must be > 0");
  if (!(std::isfinite(kappa) && kappa > 0.0) || kappa == 1.0) {
    throw DomainError("SpectralPoint: kappa must be positive and != 1, got " +
                      std::to_string(kappa));
  }
  // 1 - kappa^4 factored to keep relative accuracy near kappa = 1.
  const double one_minus_k4 = (1.0 - kappa) * (1.0 + kappa) * (1.0 + kappa * kappa);
  return {1.0 / (k * one_minus_k4), kappa, k};
}

}  // namespace beamk
