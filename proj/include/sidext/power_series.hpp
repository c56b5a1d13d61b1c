#pragma once

#include <optional>
#include <vector>

#include "sidext/fourier.hpp"

namespace sidext {

/// Truncated power series sum_k coeffs[k] * ((z - center) / scale)^k.
///
/// Coefficients are stored against the normalized variable so that deep
/// recenterings do not overflow; coefficient(k) returns the plain c_k.
/// `noise` holds an absolute error bound per stored coefficient (empty means exact).
struct PowerSeries {
  cplx center{};
  std::vector<cplx> coeffs;
  double scale = 1.0;
  std::optional<double> domain_radius;
  std::vector<double> noise;

  int K() const { return static_cast<int>(coeffs.size()) - 1; }
  double noise_at(int k) const {
    return noise.empty() ? 0.0 : noise[static_cast<std::size_t>(k)];
  }
  /// c_k in the unnormalized variable z - center.
  cplx coefficient(int k) const;
  cplx eval(cplx z) const;
  void validate() const;

  static PowerSeries from_coeffs(std::vector<cplx> c, std::optional<double> domain_radius = 1.0,
                                 cplx center = {});
};

struct RadiusEstimate {
  double value = 0.0;          ///< min over window estimates (conservative)
  double lower_window = 0.0;
  double upper_window = 0.0;
  double confidence_span = 0.0;
  double extrapolated = 0.0;   ///< first-order Richardson over the two windows
  bool bound_only = false;     ///< every window coefficient sat below its noise bound
};

/// Coefficients of the same function expanded at zeta.
///
/// The result is normalized by rho = domain_radius - |zeta - center| and truncated to
/// floor(K_last * rho / domain_radius), the range where the truncated input still
/// determines the output. Noise bounds are propagated.
PowerSeries recenter(const PowerSeries& s, cplx zeta);

/// Root-test radius from log-linear fits on the windows [K/4, K/2] and [K/2, K].
RadiusEstimate radius(const PowerSeries& s);

cplx derivative_at(const PowerSeries& s, cplx z, int order);

}  // namespace sidext
