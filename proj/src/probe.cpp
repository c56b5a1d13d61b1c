#include "sidext/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sidext {

namespace {

using ld = long double;

// Largest order n such that every order 1..n is decidable against the factorial bound.
int resolved_orders(const DerivativeSample& d, int N) {
  int tested = 0;
  for (int n = 1; n <= N && n < static_cast<int>(d.values.size()); ++n) {
    const double mag = std::abs(d.values[static_cast<std::size_t>(n)]);
    const double nz = d.noise.empty() ? 0.0 : d.noise[static_cast<std::size_t>(n)];
    const bool resolved = nz <= 0.1 * mag || std::log(mag + nz) <= std::lgamma(n + 1.0);
    if (!resolved || !std::isfinite(mag)) break;
    tested = n;
  }
  return tested;
}

double root_at(double mag, int n) {
  if (mag == 0.0) return 0.0;
  return std::exp((std::log(mag) - std::lgamma(n + 1.0)) / n);
}

double max_root(const std::vector<double>& roots, int lo, int hi) {
  double m = 0.0;
  for (int n = lo; n <= hi; ++n) m = std::max(m, roots[static_cast<std::size_t>(n)]);
  return m;
}

}  // namespace

DerivativeSource spectral_source(const FourierSpec& spec) {
  return [spec](double t, int order) {
    SpectralDerivatives s = spectral_derivatives(spec, t, order);
    return DerivativeSample{std::move(s.values), std::move(s.noise)};
  };
}

DerivativeSource jet_source(JetFn u) {
  return [u = std::move(u)](double t, int order) {
    const Jet<ld> j = u(Jet<ld>::variable(static_cast<std::size_t>(order), static_cast<ld>(t)));
    DerivativeSample d;
    for (int n = 0; n <= order; ++n) {
      const double v = static_cast<double>(j.derivative(static_cast<std::size_t>(n)));
      d.values.emplace_back(v, 0.0);
      d.noise.push_back(64 * std::numeric_limits<double>::epsilon() * std::abs(v));
    }
    return d;
  };
}

DerivativeSource flat_bump_source() {
  JetFn bump = [](const Jet<ld>& x) {
    const Jet<ld> s = sin(x * 0.5L);
    return exp(reciprocal(s * s) * -1.0L);
  };
  DerivativeSource inner = jet_source(bump);
  return [inner](double t, int order) {
    if (std::sin(t / 2) == 0.0) {
      DerivativeSample d;
      d.values.assign(static_cast<std::size_t>(order) + 1, cplx{});
      d.noise.assign(static_cast<std::size_t>(order) + 1, 0.0);
      return d;
    }
    return inner(t, order);
  };
}

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::analytic: return "analytic";
    case ProbeVerdict::non_analytic: return "non_analytic";
    default: return "inconclusive";
  }
}

AnalyticityProbe analyticity_probe(const DerivativeSource& u, double t0, const ProbeConfig& cfg) {
  if (!u) throw PreconditionError("analyticity_probe: empty derivative source");
  if (cfg.N_probe < 4) throw PreconditionError("analyticity_probe: N_probe must be >= 4");
  if (cfg.ladder_max_exp < 0 || cfg.ladder_max_exp > 30)
    throw PreconditionError("analyticity_probe: ladder exponent must lie in [0, 30]");
  AnalyticityProbe p;
  p.t0 = t0;
  const DerivativeSample d = u(t0, cfg.N_probe);
  p.orders_tested = resolved_orders(d, cfg.N_probe);
  const int T = p.orders_tested;
  p.roots.assign(static_cast<std::size_t>(T) + 1, 0.0);
  for (int n = 0; n <= T; ++n) {
    p.magnitudes.push_back(std::abs(d.values[static_cast<std::size_t>(n)]));
    if (n > 0) p.roots[static_cast<std::size_t>(n)] = root_at(p.magnitudes.back(), n);
  }

  const double worst = T > 0 ? max_root(p.roots, 1, T) : 0.0;
  for (int e = 0; e <= cfg.ladder_max_exp; ++e) {
    const double k = std::ldexp(1.0, e);
    if (worst <= k) {
      p.k_star = k;
      break;
    }
  }

  bool growth_known = false;
  if (T >= 8) {
    const int hi_lo = static_cast<int>(std::ceil(0.8 * T));
    const int lo_lo = static_cast<int>(std::ceil(0.4 * T)), lo_hi = static_cast<int>(std::ceil(0.5 * T));
    const double mh = max_root(p.roots, hi_lo, T), ml = max_root(p.roots, lo_lo, lo_hi);
    if (ml > 0)
      p.growth = mh / ml;
    else
      p.growth = mh > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    growth_known = true;
  }

  bool neighbors_ok = true;
  if (p.k_star && cfg.neighbor_check) {
    const double k = *p.k_star, delta = 1.0 / (4 * k);
    for (double t : {t0 - delta, t0 + delta}) {
      const DerivativeSample dn = u(t, cfg.N_probe);
      const int Tn = resolved_orders(dn, cfg.N_probe);
      NeighborCheck c;
      c.t = t;
      c.bound = k / (1 - k * delta);
      for (int n = 1; n <= Tn; ++n) {
        // Taylor expansion about t0 gives |d_n(t)| <= n! k^n / (1 - k delta)^(n+1).
        const double r = root_at(std::abs(dn.values[static_cast<std::size_t>(n)]), n);
        const double allowed = c.bound * std::pow(1 - k * delta, -1.0 / n);
        c.max_root = std::max(c.max_root, r);
        if (r > 1.01 * allowed) c.ok = false;
      }
      neighbors_ok = neighbors_ok && c.ok;
      p.neighbors.push_back(c);
    }
  }

  if (!p.k_star || (growth_known && p.growth > cfg.growth_non) || !neighbors_ok)
    p.verdict = ProbeVerdict::non_analytic;
  else if (growth_known && p.growth <= cfg.growth_ok)
    p.verdict = ProbeVerdict::analytic;
  else
    p.verdict = ProbeVerdict::inconclusive;
  return p;
}

}  // namespace sidext
