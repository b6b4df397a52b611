#include "xxent/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xxent/error.hpp"

namespace xxent {

using std::numbers::pi;

ModelParams ModelParams::create(double h) {
  if (!std::isfinite(h) || std::abs(h) >= 2.0) {
    raise(ErrorKind::kInvalidParams,
          "field h = " + std::to_string(h) + " is outside the critical phase |h| < 2");
  }
  // acos(0) is not exactly pi/2 in every libm.
  const double k_fermi = (h == 0.0) ? pi / 2.0 : std::acos(std::abs(h) / 2.0);
  return ModelParams(h, k_fermi);
}

double symbol(const ModelParams& params, double theta) {
  double t = std::fmod(theta, 2.0 * pi);
  if (t < 0.0) t += 2.0 * pi;
  const double kf = params.fermi_momentum();
  return (t <= kf || t >= 2.0 * pi - kf) ? 1.0 : -1.0;
}

double fourier_coefficient(const ModelParams& params, std::int64_t lag) {
  const double kf = params.fermi_momentum();
  if (lag == 0) return (2.0 * kf - pi) / pi;
  const double l = static_cast<double>(lag);
  if (params.h() == 0.0) {
    // Half filling: even lags vanish exactly, odd lags alternate in sign.
    if (lag % 2 == 0) return 0.0;
    const std::int64_t a = lag < 0 ? -lag : lag;
    const double sign = ((a - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * 2.0 / (pi * static_cast<double>(a));
  }
  return 2.0 * std::sin(l * kf) / (pi * l);
}

FourierTable::FourierTable(const ModelParams& params, std::int64_t max_lag)
    : params_(params), max_lag_(max_lag) {
  if (max_lag < 0) raise(ErrorKind::kTableRange, "negative max_lag");
  values_.resize(static_cast<std::size_t>(max_lag) + 1);
  for (std::int64_t l = 0; l <= max_lag; ++l) {
    values_[static_cast<std::size_t>(l)] = fourier_coefficient(params, l);
  }
}

double FourierTable::at(std::int64_t lag) const {
  if (lag > max_lag_ || lag < -max_lag_) {
    raise(ErrorKind::kTableRange, "lag " + std::to_string(lag) + " exceeds table range " +
                                      std::to_string(max_lag_));
  }
  return (*this)[lag];
}

}  // namespace xxent
