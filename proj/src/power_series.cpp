#include "sidext/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sidext {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier compensated accumulator.
struct CompensatedSum {
  cplx sum{}, comp{};
  void add(cplx v) {
    auto step = [](double& s, double& c, double x) {
      double t = s + x;
      c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
      s = t;
    };
    double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
    step(sr, cr, v.real());
    step(si, ci, v.imag());
    sum = {sr, si};
    comp = {cr, ci};
  }
  cplx value() const { return sum + comp; }
};

std::vector<double> log_factorials(int n) {
  std::vector<double> L(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) L[static_cast<std::size_t>(i)] = std::lgamma(i + 1.0);
  return L;
}

bool significant(const PowerSeries& s, int k) {
  double a = std::abs(s.coeffs[static_cast<std::size_t>(k)]);
  return a > kTiny && a > 4.0 * s.noise_at(k);
}

struct WindowFit {
  bool ok = false;
  double slope = 0.0;  // d ln|a_k| / dk in the normalized variable
};

WindowFit fit_window(const PowerSeries& s, int lo, int hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0, last = -1;
  for (int k = std::max(lo, 1); k <= hi; ++k) {
    if (!significant(s, k)) continue;
    double y = std::log(std::abs(s.coeffs[static_cast<std::size_t>(k)]));
    sx += k, sy += y, sxx += double(k) * k, sxy += k * y, ++cnt, last = k;
  }
  WindowFit w;
  if (cnt == 0) return w;
  w.ok = true;
  if (cnt == 1) {
    w.slope = std::log(std::abs(s.coeffs[static_cast<std::size_t>(last)])) / last;
    return w;
  }
  double den = cnt * sxx - sx * sx;
  w.slope = (cnt * sxy - sx * sy) / den;
  return w;
}

}  // namespace

cplx PowerSeries::coefficient(int k) const {
  return coeffs.at(static_cast<std::size_t>(k)) * std::pow(scale, -k);
}

cplx PowerSeries::eval(cplx z) const {
  const cplx w = (z - center) / scale;
  cplx acc{};
  for (int k = K(); k >= 0; --k) acc = acc * w + coeffs[static_cast<std::size_t>(k)];
  return acc;
}

void PowerSeries::validate() const {
  if (coeffs.empty()) throw PreconditionError("PowerSeries: empty coefficient list");
  if (!(scale > 0) || !std::isfinite(scale)) throw PreconditionError("PowerSeries: bad scale");
  if (!noise.empty() && noise.size() != coeffs.size())
    throw PreconditionError("PowerSeries: noise length mismatch");
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw PreconditionError("PowerSeries: non-finite coefficient");
  if (domain_radius && !(*domain_radius >= 0))
    throw PreconditionError("PowerSeries: negative domain radius");
}

PowerSeries PowerSeries::from_coeffs(std::vector<cplx> c, std::optional<double> domain_radius,
                                     cplx center) {
  PowerSeries s;
  s.center = center;
  s.coeffs = std::move(c);
  s.domain_radius = domain_radius;
  s.validate();
  return s;
}

PowerSeries recenter(const PowerSeries& s, cplx zeta) {
  s.validate();
  if (!s.domain_radius) throw PreconditionError("recenter: domain radius unknown");
  if (s.K() < 16) throw PreconditionError("recenter: K must be at least 16");
  const double D = *s.domain_radius;
  const cplx delta = zeta - s.center;
  const double dist = std::abs(delta);
  if (dist > 0.98 * D * (1 + 1e-12)) throw PreconditionError("recenter: point outside the safe disk");

  const double rho = D - dist;
  int k_last = -1;
  for (int m = s.K(); m >= 0; --m)
    if (significant(s, m)) {
      k_last = m;
      break;
    }

  PowerSeries out;
  out.center = zeta;
  out.scale = rho;
  out.domain_radius = rho;
  if (k_last < 0) {
    out.coeffs.assign(1, cplx{});
    out.noise.assign(1, s.noise_at(0));
    return out;
  }
  int k_out = static_cast<int>(std::floor(k_last * rho / D + 1e-9));

  // C(m,k) x^(m-k) y^k with x + y = D/scale: a negative-binomial mass when scale = D.
  const double x = dist / s.scale, y = rho / s.scale;
  const double lnx = x > 0 ? std::log(x) : -kInf, lny = std::log(y);
  const std::vector<double> L = log_factorials(k_last);
  std::vector<cplx> phase(static_cast<std::size_t>(k_last + 1));
  const double arg = dist > 0 ? std::arg(delta) : 0.0;
  for (int j = 0; j <= k_last; ++j) phase[static_cast<std::size_t>(j)] = std::polar(1.0, j * arg);

  std::vector<int> live;
  std::vector<double> lnabs(static_cast<std::size_t>(k_last + 1), -kInf);
  for (int m = 0; m <= k_last; ++m) {
    double a = std::abs(s.coeffs[static_cast<std::size_t>(m)]);
    double e = a + s.noise_at(m);
    if (e > 0) {
      live.push_back(m);
      lnabs[static_cast<std::size_t>(m)] = std::log(e);
    }
  }

  // Unknown coefficients beyond K: their total mass is bounded by the stored mass on (K/2, K],
  // in units of the domain radius.
  const double ln_ds = std::log(D / s.scale);
  double ln_env = -kInf;
  for (int m = s.K() / 2 + 1; m <= s.K(); ++m) {
    const double e = std::abs(s.coeffs[static_cast<std::size_t>(m)]) + s.noise_at(m);
    if (e > 0) {
      const double le = std::log(e) + m * ln_ds;
      ln_env = std::isfinite(ln_env) ? std::max(ln_env, le) + std::log1p(std::exp(-std::abs(ln_env - le))) : le;
    }
  }
  // A low-degree polynomial with a stored zero tail is recentered exactly, padded so the
  // tail window reads zero.
  if (!std::isfinite(ln_env) && k_last <= 16) k_out = std::max(k_out, std::min(s.K(), 4 * k_last + 4));
  const double lnp = dist > 0 ? std::log(dist / D) : -kInf, lnq = std::log(rho / D);
  // Largest binomial weight on the unknown tail m > K; the weight is unimodal in m.
  auto tail_bound = [&](int k) {
    if (dist == 0 || !std::isfinite(ln_env)) return 0.0;
    const int m = std::max(s.K() + 1, static_cast<int>(std::floor(k * D / rho)));
    const double lw = std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) +
                      (m - k) * lnp + k * lnq;
    return std::exp(ln_env + lw);
  };

  out.coeffs.assign(static_cast<std::size_t>(k_out + 1), cplx{});
  out.noise.assign(static_cast<std::size_t>(k_out + 1), 0.0);
  for (int k = 0; k <= k_out; ++k) {
    CompensatedSum acc;
    double abs_sum = 0.0, noise_sum = 0.0;
    auto first = std::lower_bound(live.begin(), live.end(), k);
    for (auto it = first; it != live.end(); ++it) {
      const int m = *it;
      double lw;
      if (m == k)
        lw = k * lny;
      else if (x == 0)
        break;
      else
        lw = L[static_cast<std::size_t>(m)] - L[static_cast<std::size_t>(k)] -
             L[static_cast<std::size_t>(m - k)] + (m - k) * lnx + k * lny;
      if (lw + lnabs[static_cast<std::size_t>(m)] < -745.0) continue;
      const double w = std::exp(lw);
      const cplx a = s.coeffs[static_cast<std::size_t>(m)];
      if (significant(s, m)) {
        acc.add(a * phase[static_cast<std::size_t>(m - k)] * w);
        // Rounding in the log-weight and the phase grows with the magnitudes involved.
        const double rel = 16.0 + 2.0 * L[static_cast<std::size_t>(m)] + std::abs(lw) + (m - k);
        abs_sum += rel * std::abs(a) * w;
        noise_sum += s.noise_at(m) * w;
      } else {
        noise_sum += (std::abs(a) + s.noise_at(m)) * w;
      }
    }
    out.coeffs[static_cast<std::size_t>(k)] = acc.value();
    out.noise[static_cast<std::size_t>(k)] = kEps * abs_sum + noise_sum + tail_bound(k);
  }
  return out;
}

RadiusEstimate radius(const PowerSeries& s) {
  s.validate();
  const int K = s.K();
  if (K < 8) throw PreconditionError("radius: K must be at least 8");

  RadiusEstimate r;
  bool tail_present = false;
  for (int k = std::max(K / 4, 1); k <= K; ++k)
    if (std::abs(s.coeffs[static_cast<std::size_t>(k)]) > kTiny) tail_present = true;
  if (!tail_present) {
    r.value = r.lower_window = r.upper_window = r.extrapolated = kInf;
    return r;
  }

  int k_eff = 0;
  for (int k = K; k >= 1; --k)
    if (significant(s, k)) {
      k_eff = k;
      break;
    }
  WindowFit lo, hi;
  if (k_eff >= 8) {
    lo = fit_window(s, k_eff / 4, k_eff / 2);
    hi = fit_window(s, k_eff / 2, k_eff);
  }

  if (!lo.ok && !hi.ok) {
    // Only noise in the tail: the noise level itself bounds the coefficients.
    double best = kInf;
    for (int k = std::max(K / 4, 1); k <= K; ++k) {
      double nz = std::max(s.noise_at(k), std::abs(s.coeffs[static_cast<std::size_t>(k)]));
      if (nz > kTiny) best = std::min(best, std::pow(nz, -1.0 / k));
    }
    r.value = r.lower_window = r.upper_window = r.extrapolated = s.scale * best;
    r.confidence_span = kInf;
    r.bound_only = true;
    return r;
  }

  auto to_radius = [&](double slope) { return s.scale * std::exp(-slope); };
  if (lo.ok && hi.ok) {
    const double r_lo = to_radius(lo.slope), r_hi = to_radius(hi.slope);
    r.value = std::min(r_lo, r_hi);
    r.extrapolated = to_radius(2.0 * hi.slope - lo.slope);
    r.lower_window = std::min({r_lo, r_hi, r.extrapolated});
    r.upper_window = std::max({r_lo, r_hi, r.extrapolated});
    r.confidence_span = r.upper_window - r.lower_window;
  } else {
    const double only = to_radius(lo.ok ? lo.slope : hi.slope);
    r.value = r.lower_window = r.upper_window = r.extrapolated = only;
    r.confidence_span = kInf;
  }
  return r;
}

cplx derivative_at(const PowerSeries& s, cplx z, int order) {
  s.validate();
  if (order < 0 || order > s.K() / 2) throw PreconditionError("derivative_at: order exceeds K/2");
  const cplx w = (z - s.center) / s.scale;
  if (s.domain_radius && std::abs(z - s.center) > 0.98 * *s.domain_radius * (1 + 1e-12))
    throw PreconditionError("derivative_at: point outside the safe disk");
  // f^(j)(z) = j! scale^-j sum_k C(k,j) a_k w^(k-j)
  const std::vector<double> L = log_factorials(s.K());
  const double lnw = std::abs(w) > 0 ? std::log(std::abs(w)) : -kInf;
  const double argw = std::arg(w);
  CompensatedSum acc;
  for (int k = order; k <= s.K(); ++k) {
    const cplx a = s.coeffs[static_cast<std::size_t>(k)];
    if (a == cplx{}) continue;
    if (k > order && std::abs(w) == 0) break;
    double lc = L[static_cast<std::size_t>(k)] - L[static_cast<std::size_t>(order)] -
                L[static_cast<std::size_t>(k - order)];
    double lw = (k == order) ? lc : lc + (k - order) * lnw;
    acc.add(a * std::polar(std::exp(lw), (k - order) * argw));
  }
  return acc.value() * std::exp(L[static_cast<std::size_t>(order)] - order * std::log(s.scale));
}

}  // namespace sidext
