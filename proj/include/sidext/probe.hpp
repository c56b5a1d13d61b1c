#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sidext/fourier.hpp"
#include "sidext/jet.hpp"

namespace sidext {

/// Derivatives 0..order of u at a parameter point, with absolute noise bounds.
struct DerivativeSample {
  std::vector<cplx> values;
  std::vector<double> noise;  ///< empty means exact
};
using DerivativeSource = std::function<DerivativeSample(double t, int order)>;

/// Spectral differentiation of a coefficient table.
DerivativeSource spectral_source(const FourierSpec& spec);

using JetFn = std::function<Jet<long double>(const Jet<long double>&)>;
/// Taylor-mode differentiation of a closed-form u; rounding noise is taken as 64 eps |d_n|.
DerivativeSource jet_source(JetFn u);

/// exp(-1 / sin^2(theta / 2)), extended by 0 where sin(theta / 2) = 0.
DerivativeSource flat_bump_source();

enum class ProbeVerdict { analytic, non_analytic, inconclusive };
std::string to_string(ProbeVerdict v);

struct ProbeConfig {
  int N_probe = 24;
  int ladder_max_exp = 10;    ///< k ranges over 1, 2, ..., 2^ladder_max_exp
  double growth_non = 1.5;    ///< root ratio above this is growth
  double growth_ok = 1.25;    ///< root ratio at or below this is settled
  bool neighbor_check = true;
};

struct NeighborCheck {
  double t = 0.0;
  double max_root = 0.0;  ///< max_n (|d_n| / n!)^(1/n) at t
  double bound = 0.0;     ///< k* / (1 - k* delta); order n may reach bound (1 - k* delta)^(-1/n)
  bool ok = true;
};

struct AnalyticityProbe {
  double t0 = 0.0;
  int orders_tested = 0;               ///< orders 1..orders_tested passed the noise cap
  std::optional<double> k_star;
  std::vector<double> magnitudes;      ///< |d^n u(t0)|, n = 0..orders_tested
  std::vector<double> roots;           ///< (|d_n| / n!)^(1/n), n = 1..orders_tested (index 0 unused)
  double growth = 0.0;                 ///< max root over the top orders / max root over the middle orders
  std::vector<NeighborCheck> neighbors;
  ProbeVerdict verdict = ProbeVerdict::inconclusive;
};

AnalyticityProbe analyticity_probe(const DerivativeSource& u, double t0, const ProbeConfig& cfg = {});

}  // namespace sidext
