#pragma once

#include <cstdint>
#include <vector>

namespace xxent {

/// Field strength of the XX chain and the Fermi momentum it implies.
///
/// Only the critical phase |h| < 2 is representable; `create` rejects
/// anything else with InvalidParams.
class ModelParams {
 public:
  static ModelParams create(double h);

  double h() const noexcept { return h_; }
  /// arccos(|h| / 2), in (0, pi/2].
  double fermi_momentum() const noexcept { return k_fermi_; }

 private:
  ModelParams(double h, double k_fermi) : h_(h), k_fermi_(k_fermi) {}

  double h_;
  double k_fermi_;
};

/// The +-1 valued symbol g(theta): +1 on (-k_F, k_F) modulo 2 pi, -1 on
/// (k_F, 2 pi - k_F). The two boundary points map to +1.
double symbol(const ModelParams& params, double theta);

/// Fourier coefficient g_l of the symbol, in closed form.
double fourier_coefficient(const ModelParams& params, std::int64_t lag);

/// g_l for |l| <= max_lag, evaluated once.
class FourierTable {
 public:
  FourierTable(const ModelParams& params, std::int64_t max_lag);

  const ModelParams& params() const noexcept { return params_; }
  std::int64_t max_lag() const noexcept { return max_lag_; }

  /// Raises TableRange for |lag| > max_lag.
  double at(std::int64_t lag) const;
  double operator[](std::int64_t lag) const noexcept {
    return values_[static_cast<std::size_t>(lag < 0 ? -lag : lag)];
  }

 private:
  ModelParams params_;
  std::int64_t max_lag_;
  std::vector<double> values_;  // values_[l] = g_l = g_{-l}, l >= 0
};

}  // namespace xxent
