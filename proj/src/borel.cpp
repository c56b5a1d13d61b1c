#include "sidext/borel.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "sidext/jet.hpp"

namespace sidext {

namespace {

using ld = long double;
constexpr ld kTwoPiL = 6.283185307179586476925286766559L;

// Fornberg's recursion: weights[j][i] for the j-th derivative at x0 from nodes[i].
std::vector<std::vector<ld>> fornberg(const std::vector<ld>& nodes, ld x0, int m) {
  const int n = static_cast<int>(nodes.size()) - 1;
  std::vector<std::vector<ld>> c(static_cast<std::size_t>(m + 1),
                                 std::vector<ld>(static_cast<std::size_t>(n + 1), 0.0L));
  ld c1 = 1.0L, c4 = nodes[0] - x0;
  c[0][0] = 1.0L;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    ld c2 = 1.0L;
    const ld c5 = c4;
    c4 = nodes[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const ld c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

ld factorial(int n) {
  ld f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Jet<ld> flat_exp(const Jet<ld>& t) { return exp(reciprocal(t) * -1.0L); }

}  // namespace

std::vector<long double> smooth_cutoff_derivatives(long double x, long double eps, int order) {
  if (!(eps > 0)) throw PreconditionError("smooth_cutoff: eps must be positive");
  std::vector<ld> out(static_cast<std::size_t>(order + 1), 0.0L);
  const ld ax = std::fabs(x);
  if (ax <= eps / 2) {
    out[0] = 1.0L;
    return out;
  }
  if (ax >= eps) return out;
  const ld sgn = x > 0 ? 1.0L : -1.0L;
  Jet<ld> t(static_cast<std::size_t>(order), (eps - ax) / (eps / 2));
  if (order >= 1) t[1] = -sgn / (eps / 2);
  const Jet<ld> p = flat_exp(t);
  const Jet<ld> q = flat_exp(1.0L - t);
  const Jet<ld> step = p / (p + q);
  for (int k = 0; k <= order; ++k) out[static_cast<std::size_t>(k)] = step.derivative(static_cast<std::size_t>(k));
  return out;
}

double smooth_cutoff(double x, double eps) {
  return static_cast<double>(smooth_cutoff_derivatives(x, eps, 0)[0]);
}

cplxl BridgeFunction::eval(long double x) const { return derivatives(x, 0)[0]; }

std::vector<cplxl> BridgeFunction::derivatives(long double x, int order) const {
  std::vector<cplxl> out(static_cast<std::size_t>(order + 1));
  if (!polynomial.empty()) {
    const ld y = x - s;
    for (int j = 0; j <= order; ++j) {
      cplxl acc{};
      for (int n = static_cast<int>(polynomial.size()) - 1; n >= j; --n) {
        // d^j/dx^j of (x-s)^n = n!/(n-j)! y^(n-j)
        ld w = factorial(n) / factorial(n - j) * std::pow(y, static_cast<ld>(n - j));
        acc += cplxl(polynomial[static_cast<std::size_t>(n)]) * w;
      }
      out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
  }
  for (const auto& term : terms) {
    const ld y = x - (term.side == 0 ? s : t);
    if (std::fabs(y) >= term.eps) continue;
    const auto chi = smooth_cutoff_derivatives(y, term.eps, order);
    Jet<ld> cut(static_cast<std::size_t>(order));
    for (int k = 0; k <= order; ++k) cut[static_cast<std::size_t>(k)] = chi[static_cast<std::size_t>(k)] / factorial(k);
    const Jet<ld> prod = pow(Jet<ld>::variable(static_cast<std::size_t>(order), y), term.order) * cut;
    const cplxl c(term.coefficient);
    for (int j = 0; j <= order; ++j) out[static_cast<std::size_t>(j)] += c * prod.derivative(static_cast<std::size_t>(j));
  }
  return out;
}

double BridgeFunction::sup_bound() const {
  if (!polynomial.empty()) {
    double b = 0.0;
    for (std::size_t n = 0; n < polynomial.size(); ++n)
      b += std::abs(polynomial[n]) * std::pow(t - s, static_cast<double>(n));
    return b;
  }
  double side[2] = {0.0, 0.0};
  for (const auto& term : terms)
    side[term.side] += std::abs(term.coefficient) * std::pow(term.eps, term.order);
  return std::max(side[0], side[1]);
}

double BridgeFunction::plateau() const {
  double p = t - s;
  for (const auto& term : terms) p = std::min(p, term.eps / 2);
  return p;
}

BridgeFunction jet_bridge(const JetData& left, const JetData& right, int K, int max_order) {
  if (!(right.point > left.point)) throw PreconditionError("jet_bridge: need t > s");
  if (K < 0 || K > max_order) throw PreconditionError("jet_bridge: order outside [0, max]");
  auto take = [K](const JetData& j) {
    std::vector<cplx> d(static_cast<std::size_t>(K + 1));
    for (int n = 0; n <= K && n <= j.K(); ++n) d[static_cast<std::size_t>(n)] = j.derivs[static_cast<std::size_t>(n)];
    return d;
  };
  const std::vector<cplx> dl = take(left), dr = take(right);
  BridgeFunction b;
  b.s = left.point;
  b.t = right.point;
  b.K = K;
  const double len = b.t - b.s;

  // Prefer the Taylor polynomial of the left jet when it also reproduces the right jet.
  bool same = true;
  for (int j = 0; j <= K && same; ++j) {
    cplx v{};
    for (int n = K; n >= j; --n)
      v += dl[static_cast<std::size_t>(n)] / static_cast<double>(factorial(n - j)) * std::pow(len, n - j);
    const cplx want = dr[static_cast<std::size_t>(j)];
    if (std::abs(v - want) > 1e-12 * (1.0 + std::abs(want))) same = false;
  }
  if (same) {
    b.polynomial.resize(static_cast<std::size_t>(K + 1));
    for (int n = 0; n <= K; ++n)
      b.polynomial[static_cast<std::size_t>(n)] = dl[static_cast<std::size_t>(n)] / static_cast<double>(factorial(n));
    return b;
  }

  auto scale = [&](int n, cplx d) {
    double e = len / 4.0;
    if (n >= 2)
      e = std::min(e, 0.5 * std::pow(static_cast<double>(factorial(n)) / (1.0 + std::abs(d)), 1.0 / n));
    return e;
  };
  for (int side = 0; side < 2; ++side) {
    const auto& d = side == 0 ? dl : dr;
    for (int n = 0; n <= K; ++n) {
      const cplx dn = d[static_cast<std::size_t>(n)];
      if (dn == cplx{}) continue;
      b.terms.push_back({side, n, dn / static_cast<double>(factorial(n)), scale(n, dn)});
    }
  }
  return b;
}

std::vector<cplxl> one_sided_fd(const RealFn& f, long double x0, int dir, long double h,
                                int max_order, int accuracy) {
  const int npts = max_order + std::max(accuracy, 1);
  std::vector<ld> nodes(static_cast<std::size_t>(npts));
  std::vector<cplxl> vals(static_cast<std::size_t>(npts));
  for (int i = 0; i < npts; ++i) {
    nodes[static_cast<std::size_t>(i)] = x0 + dir * h * i;
    vals[static_cast<std::size_t>(i)] = f(nodes[static_cast<std::size_t>(i)]);
  }
  std::vector<cplxl> out(static_cast<std::size_t>(max_order + 1));
  for (int j = 0; j <= max_order; ++j) {
    const int m = j + std::max(accuracy, 1);
    std::vector<ld> sub(nodes.begin(), nodes.begin() + m);
    const auto w = fornberg(sub, x0, j);
    cplxl acc{};
    for (int i = 0; i < m; ++i) acc += w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * vals[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

JetData jet_from_function(const RealFn& f, double x0, int dir, double len, int K) {
  const int n = std::max(20, K + 12);
  const ld L = len;
  // Chebyshev points s_k = cos(pi (k + 1/2) / n) mapped so that s = -1 sits at x0.
  std::vector<cplxl> vals(static_cast<std::size_t>(n));
  const ld pi = kTwoPiL / 2;
  for (int k = 0; k < n; ++k) {
    const ld s = std::cos(pi * (k + 0.5L) / n);
    vals[static_cast<std::size_t>(k)] = f(x0 + dir * L * (s + 1.0L) / 2.0L);
  }
  std::vector<cplxl> coef(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    cplxl acc{};
    for (int k = 0; k < n; ++k) acc += vals[static_cast<std::size_t>(k)] * std::cos(pi * j * (k + 0.5L) / n);
    coef[static_cast<std::size_t>(j)] = acc * (j == 0 ? 1.0L : 2.0L) / static_cast<ld>(n);
  }
  // Coefficients below the rounding floor are noise; endpoint derivatives amplify them by ~j^(2d).
  ld cmax = 0.0L;
  for (const auto& c : coef) cmax = std::max(cmax, std::abs(c));
  int n_keep = n;
  while (n_keep > 1 && std::abs(coef[static_cast<std::size_t>(n_keep - 1)]) <= 64 * n * LDBL_EPSILON * cmax) --n_keep;
  JetData jet;
  jet.point = x0;
  jet.derivs.resize(static_cast<std::size_t>(K + 1));
  const ld ds = 2.0L / (dir * L);
  for (int d = 0; d <= K; ++d) {
    cplxl acc{};
    for (int j = 0; j < n_keep; ++j) {
      // T_j^(d)(-1) = (-1)^(j+d) prod_{i<d} (j^2 - i^2)/(2i+1)
      ld w = ((j + d) % 2 == 0) ? 1.0L : -1.0L;
      for (int i = 0; i < d; ++i) w *= static_cast<ld>(j * j - i * i) / (2 * i + 1);
      acc += coef[static_cast<std::size_t>(j)] * w;
    }
    acc *= std::pow(ds, static_cast<ld>(d));
    jet.derivs[static_cast<std::size_t>(d)] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return jet;
}

JetData jet_from_samples(const std::vector<cplx>& samples, double x0, int dir, double h, int K) {
  const int m = K + 3;
  if (static_cast<int>(samples.size()) < m) throw PreconditionError("jet_from_samples: too few samples");
  std::vector<ld> nodes(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) nodes[static_cast<std::size_t>(i)] = static_cast<ld>(dir) * h * i;
  const auto w = fornberg(nodes, 0.0L, K);
  JetData jet;
  jet.point = x0;
  jet.derivs.resize(static_cast<std::size_t>(K + 1));
  for (int j = 0; j <= K; ++j) {
    cplxl acc{};
    for (int i = 0; i < m; ++i) acc += w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * cplxl(samples[static_cast<std::size_t>(i)]);
    jet.derivs[static_cast<std::size_t>(j)] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return jet;
}

PeriodicExtension::PeriodicExtension(ArcData arc, BridgeFunction bridge)
    : arc_(std::move(arc)), bridge_(std::move(bridge)) {}

bool PeriodicExtension::on_arc(double t) const {
  double tau = arc_.a + std::fmod(std::fmod(t - arc_.a, 2 * kPi) + 2 * kPi, 2 * kPi);
  return tau <= arc_.b;
}

cplxl PeriodicExtension::inner(long double t) const {
  if (arc_.u) return arc_.u(t);
  const std::size_t n = arc_.samples.size();
  const ld h = (static_cast<ld>(arc_.b) - arc_.a) / (n - 1);
  ld pos = (t - arc_.a) / h;
  // Parameters that land on a node up to rounding return the stored sample.
  const ld nearest = std::round(pos);
  if (std::fabs(pos - nearest) < 1e-9L) pos = nearest;
  if (pos <= 0) return cplxl(arc_.samples.front());
  if (pos >= n - 1) return cplxl(arc_.samples.back());
  const auto i = static_cast<std::size_t>(pos);
  const ld frac = pos - i;
  if (frac == 0) return cplxl(arc_.samples[i]);
  return cplxl(arc_.samples[i]) * (1 - frac) + cplxl(arc_.samples[i + 1]) * frac;
}

cplxl PeriodicExtension::eval(long double t) const {
  ld tau = std::fmod(t - arc_.a, kTwoPiL);
  if (tau < 0) tau += kTwoPiL;
  tau += arc_.a;
  if (tau <= arc_.b) return inner(tau);
  return bridge_.eval(tau);
}

FourierSpec PeriodicExtension::to_fourier(std::size_t M) const {
  SampleGrid g;
  g.values.resize(M);
  for (std::size_t j = 0; j < M; ++j) {
    cplxl v = eval(kTwoPiL * j / M);
    g.values[j] = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  return analyze_samples(g);
}

namespace {

SeamCheck compare_sides(const RealFn& left_side, const RealFn& right_side, ld x, int K, ld h) {
  SeamCheck c;
  c.point = static_cast<double>(x);
  const auto l = one_sided_fd(left_side, x, -1, h, K, 4);
  const auto r = one_sided_fd(right_side, x, +1, h, K, 4);
  for (int j = 0; j <= K; ++j) {
    double e = static_cast<double>(std::abs(l[static_cast<std::size_t>(j)] - r[static_cast<std::size_t>(j)]));
    c.errors.push_back(e);
    c.max_error = std::max(c.max_error, e);
  }
  return c;
}

}  // namespace

namespace {

double seam_step(double h, int K, double plateau) {
  return h > 0 ? h : std::min(0.025, plateau / (K + 4));
}

}  // namespace

std::vector<SeamCheck> PeriodicExtension::seam_checks(int K, double h) const {
  h = seam_step(h, K, bridge_.plateau());
  if (!arc_.u) {
    // Stencils on sampled data step along the sample nodes.
    const double step = (arc_.b - arc_.a) / static_cast<double>(arc_.samples.size() - 1);
    h = std::max(1.0, std::round(h / step)) * step;
  }
  RealFn inner_fn = [this](ld t) { return inner(t); };
  RealFn bridge_fn = [this](ld t) { return bridge_.eval(t); };
  // At b the arc lies to the left; at a (= a + 2 pi) the bridge lies to the left.
  RealFn bridge_shifted = [this](ld t) { return bridge_.eval(t + kTwoPiL); };
  return {compare_sides(inner_fn, bridge_fn, arc_.b, K, h),
          compare_sides(bridge_shifted, inner_fn, arc_.a, K, h)};
}

PeriodicExtension extend_arc_to_circle(const ArcData& arc, int K) {
  if (!(arc.b - arc.a >= 1e-3)) throw PreconditionError("extend_arc_to_circle: arc shorter than 1e-3");
  if (arc.a < 0 || arc.b > 2 * kPi + 1e-12) throw PreconditionError("extend_arc_to_circle: need 0 <= a < b <= 2 pi");
  if (!arc.u && arc.samples.size() < static_cast<std::size_t>(K + 3))
    throw PreconditionError("extend_arc_to_circle: need an evaluable or at least K+3 samples");
  JetData at_a, at_b;
  if (arc.left_jet) {
    at_a = *arc.left_jet;
  } else if (arc.u) {
    at_a = jet_from_function(arc.u, arc.a, +1, std::min(1.0, (arc.b - arc.a) / 2), K);
  } else {
    const double h = (arc.b - arc.a) / static_cast<double>(arc.samples.size() - 1);
    at_a = jet_from_samples(arc.samples, arc.a, +1, h, K);
  }
  if (arc.right_jet) {
    at_b = *arc.right_jet;
  } else if (arc.u) {
    at_b = jet_from_function(arc.u, arc.b, -1, std::min(1.0, (arc.b - arc.a) / 2), K);
  } else {
    const double h = (arc.b - arc.a) / static_cast<double>(arc.samples.size() - 1);
    std::vector<cplx> rev(arc.samples.rbegin(), arc.samples.rend());
    at_b = jet_from_samples(rev, arc.b, -1, h, K);
  }
  at_b.point = arc.b;
  at_a.point = arc.a + 2 * kPi;
  return PeriodicExtension(arc, jet_bridge(at_b, at_a, K));
}

LineExtension::LineExtension(double gamma, double delta, RealFn u, BridgeFunction left,
                             BridgeFunction right)
    : gamma_(gamma), delta_(delta), u_(std::move(u)), left_(std::move(left)), right_(std::move(right)) {}

cplxl LineExtension::eval(long double x) const {
  if (x <= gamma_ - 1.0L || x >= delta_ + 1.0L) return {};
  if (x < gamma_) return left_.eval(x);
  if (x <= delta_) return u_(x);
  return right_.eval(x);
}

std::vector<SeamCheck> LineExtension::seam_checks(int K, double h) const {
  h = seam_step(h, K, std::min(left_.plateau(), right_.plateau()));
  RealFn zero = [](ld) { return cplxl{}; };
  RealFn lf = [this](ld x) { return left_.eval(x); };
  RealFn rf = [this](ld x) { return right_.eval(x); };
  return {compare_sides(zero, lf, gamma_ - 1.0L, K, h), compare_sides(lf, u_, gamma_, K, h),
          compare_sides(u_, rf, delta_, K, h), compare_sides(rf, zero, delta_ + 1.0L, K, h)};
}

LineExtension extend_interval_to_line(double gamma, double delta, const RealFn& u, int K,
                                      std::optional<JetData> left_jet,
                                      std::optional<JetData> right_jet) {
  if (!(delta > gamma)) throw PreconditionError("extend_interval_to_line: need delta > gamma");
  const double len = std::min(1.0, (delta - gamma) / 2);
  JetData at_g = left_jet ? *left_jet : jet_from_function(u, gamma, +1, len, K);
  JetData at_d = right_jet ? *right_jet : jet_from_function(u, delta, -1, len, K);
  at_g.point = gamma;
  at_d.point = delta;
  JetData zero_l{gamma - 1.0, std::vector<cplx>(static_cast<std::size_t>(K + 1))};
  JetData zero_r{delta + 1.0, std::vector<cplx>(static_cast<std::size_t>(K + 1))};
  return LineExtension(gamma, delta, u, jet_bridge(zero_l, at_g, K), jet_bridge(at_d, zero_r, K));
}

}  // namespace sidext
