#include "sidext/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sidext {

namespace {

constexpr cplx kI{0.0, 1.0};

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

cplx series_derivative(const PowerSeries& F, cplx s) {
  const cplx x = (s - F.center) / F.scale;
  cplx acc{};
  for (int k = F.K(); k >= 1; --k) acc = acc * x + static_cast<double>(k) * F.coeffs[static_cast<std::size_t>(k)];
  return acc / F.scale;
}

}  // namespace

cplx MobiusMap::operator()(cplx z) const { return A * (z - 1.0) / (z + 1.0) + gamma; }

cplx MobiusMap::inverse(cplx w) const {
  const cplx s = (w - gamma) / A;
  return (1.0 + s) / (1.0 - s);
}

cplx MobiusMap::derivative(cplx z) const { return 2.0 * A / ((z + 1.0) * (z + 1.0)); }

MobiusMap mobius_segment(cplx gamma, cplx delta) {
  if (gamma == delta) throw PreconditionError("mobius_segment: endpoints must differ");
  if (!std::isfinite(std::abs(gamma)) || !std::isfinite(std::abs(delta)))
    throw PreconditionError("mobius_segment: non-finite endpoint");
  return {gamma, delta, (delta - gamma) * (kI + 1.0) / (kI - 1.0)};
}

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::circle: return "circle";
    case CurveKind::segment: return "segment";
    case CurveKind::jordan_annulus: return "jordan_annulus";
    default: return "chart";
  }
}

AnalyticCurve AnalyticCurve::circle() { return AnalyticCurve(); }

AnalyticCurve AnalyticCurve::segment(cplx gamma, cplx delta) {
  AnalyticCurve c;
  c.kind_ = CurveKind::segment;
  c.mobius_ = mobius_segment(gamma, delta);
  return c;
}

AnalyticCurve AnalyticCurve::jordan_annulus(std::vector<std::pair<int, cplx>> phi, double r, double R) {
  if (!(r > 0 && r < 1 && R > 1 && std::isfinite(R)))
    throw PreconditionError("jordan_annulus: need 0 < r < 1 < R");
  if (phi.empty()) throw PreconditionError("jordan_annulus: empty Laurent table");
  for (const auto& [n, c] : phi)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw PreconditionError("jordan_annulus: non-finite coefficient");
  AnalyticCurve c;
  c.kind_ = CurveKind::jordan_annulus;
  c.phi_ = std::move(phi);
  c.r_ = r;
  c.R_ = R;

  // Injectivity spot check: 64 angles x 8 radii, pairwise separation and nonvanishing derivative.
  constexpr int kAngles = 64, kRadii = 8;
  std::vector<cplx> pts, img;
  for (int j = 0; j < kRadii; ++j) {
    const double rho = std::exp(std::log(r) + (std::log(R) - std::log(r)) * (j + 0.5) / kRadii);
    for (int i = 0; i < kAngles; ++i) pts.push_back(std::polar(rho, 2 * kPi * i / kAngles));
  }
  double scale = 0.0;
  for (cplx p : pts) {
    img.push_back(c.phi_eval(p));
    scale = std::max(scale, std::abs(img.back()));
  }
  if (!(scale > 0) || !std::isfinite(scale)) throw PreconditionError("jordan_annulus: degenerate map");
  const double tol = 1e-9 * scale;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(c.phi_derivative(pts[i])) * std::abs(pts[i]) <= tol)
      throw PreconditionError("jordan_annulus: map has a critical point on the check mesh");
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(img[i] - img[j]) <= tol)
        throw PreconditionError("jordan_annulus: map is not injective on the check mesh");
  }
  // The image of the unit circle must be a simple closed polygon.
  constexpr int kLoop = 512;
  std::vector<cplx> loop(kLoop);
  for (int i = 0; i < kLoop; ++i) loop[static_cast<std::size_t>(i)] = c.phi_eval(std::polar(1.0, 2 * kPi * i / kLoop));
  for (int i = 0; i < kLoop; ++i)
    for (int j = i + 2; j < kLoop; ++j) {
      if (i == 0 && j == kLoop - 1) continue;
      if (segments_intersect(loop[static_cast<std::size_t>(i)], loop[static_cast<std::size_t>(i + 1)],
                             loop[static_cast<std::size_t>(j)],
                             loop[static_cast<std::size_t>((j + 1) % kLoop)]))
        throw PreconditionError("jordan_annulus: image of the unit circle self-intersects");
    }
  return c;
}

AnalyticCurve AnalyticCurve::local_chart(PowerSeries F, double injectivity_radius, double a, double b) {
  F.validate();
  if (!(injectivity_radius > 0)) throw PreconditionError("local_chart: injectivity radius must be positive");
  if (!(a < b)) throw PreconditionError("local_chart: need a < b");
  const double c0 = F.center.real();
  if (F.center.imag() != 0.0) throw PreconditionError("local_chart: chart center must be real");
  if (!(a > c0 - injectivity_radius && b < c0 + injectivity_radius))
    throw PreconditionError("local_chart: parameter range leaves the injectivity disk");
  if (F.domain_radius && !(std::max(std::abs(a - c0), std::abs(b - c0)) < *F.domain_radius))
    throw PreconditionError("local_chart: parameter range leaves the series domain");
  AnalyticCurve c;
  c.kind_ = CurveKind::local_chart;
  c.chart_ = std::move(F);
  c.chart_radius_ = injectivity_radius;
  c.a_ = a;
  c.b_ = b;
  c.mobius_ = mobius_segment(a, b);
  return c;
}

cplx AnalyticCurve::phi_eval(cplx z) const {
  cplx acc{};
  for (const auto& [n, c] : phi_) acc += c * std::pow(z, n);
  return acc;
}

cplx AnalyticCurve::phi_derivative(cplx z) const {
  cplx acc{};
  for (const auto& [n, c] : phi_)
    if (n != 0) acc += static_cast<double>(n) * c * std::pow(z, n - 1);
  return acc;
}

cplx AnalyticCurve::point(double t) const {
  if (!std::isfinite(t)) throw PreconditionError("AnalyticCurve: non-finite parameter");
  if (!periodic() && (t < -1e-12 || t > kPi / 2 + 1e-12))
    throw PreconditionError("AnalyticCurve: parameter outside the quarter arc");
  const cplx z = std::polar(1.0, t);
  switch (kind_) {
    case CurveKind::circle: return z;
    case CurveKind::segment: return mobius_(z);
    case CurveKind::jordan_annulus: return phi_eval(z);
    default: return chart_.eval(cplx(mobius_(z).real(), 0.0));
  }
}

cplx AnalyticCurve::tangent(double t) const {
  const cplx z = std::polar(1.0, t), dz = kI * z;
  switch (kind_) {
    case CurveKind::circle: return dz;
    case CurveKind::segment: return mobius_.derivative(z) * dz;
    case CurveKind::jordan_annulus: return phi_derivative(z) * dz;
    default: return series_derivative(chart_, cplx(mobius_(z).real(), 0.0)) * mobius_.derivative(z) * dz;
  }
}

double AnalyticCurve::parameter_of(cplx w) const {
  if (kind_ == CurveKind::circle) {
    double t = std::arg(w);
    return t < 0 ? t + 2 * kPi : t;
  }
  if (kind_ == CurveKind::segment) return std::clamp(std::arg(mobius_.inverse(w)), 0.0, kPi / 2);
  constexpr int kScan = 2048;
  const double lo = param_lo(), hi = param_hi();
  double best_t = lo, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) {
    const double t = lo + (hi - lo) * i / kScan;
    const double d = std::abs(point(std::min(t, hi)) - w);
    if (d < best) best = d, best_t = t;
  }
  double t = best_t;
  for (int it = 0; it < 50; ++it) {
    const cplx tg = tangent(t);
    const double step = (std::conj(tg) * (point(t) - w)).real() / std::norm(tg);
    t -= step;
    if (periodic()) {
      t = std::fmod(t, 2 * kPi);
      if (t < 0) t += 2 * kPi;
    } else {
      t = std::clamp(t, lo, hi);
    }
    if (std::abs(step) < 1e-15) break;
  }
  return t;
}

RealFn pullback_fn(const CurveFn& u, const AnalyticCurve& curve) {
  return [u, curve](long double t) { return cplxl(u(curve.point(static_cast<double>(t)))); };
}

SampleGrid pullback(const CurveFn& u, const AnalyticCurve& curve, const PullbackOptions& opt) {
  if (!u) throw PreconditionError("pullback: empty function");
  SampleGrid g;
  if (curve.periodic()) {
    g = SampleGrid::sample([&](double t) { return u(curve.point(t)); }, opt.M);
  } else {
    ArcData arc;
    arc.a = 0.0;
    arc.b = kPi / 2;
    arc.u = pullback_fn(u, curve);
    const PeriodicExtension ext = extend_arc_to_circle(arc, opt.bridge_order);
    g.values.resize(opt.arc_M);
    for (std::size_t j = 0; j < opt.arc_M; ++j) {
      const cplxl v = ext.eval(2 * kPi * static_cast<double>(j) / static_cast<double>(opt.arc_M));
      g.values[j] = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
  }
  g.validate();
  return g;
}

TransferVerdict transfer_classification(const CurveFn& u, const AnalyticCurve& curve, double t0,
                                        const ClassifyConfig& cfg, const PullbackOptions& opt) {
  if (!curve.periodic() && !(t0 > 0 && t0 < kPi / 2))
    throw PreconditionError("transfer_classification: point must lie inside the open arc");
  TransferVerdict r;
  r.t0 = t0;
  r.curve_point = curve.point(t0);
  const FourierSpec spec = analyze_samples(pullback(u, curve, opt));
  r.verdict = classify_point(spec, std::polar(1.0, t0), cfg);
  switch (curve.kind()) {
    case CurveKind::circle:
      r.inside_label = "inside";
      r.outside_label = "outside";
      break;
    case CurveKind::jordan_annulus: {
      // Signed area of the image loop decides whether the disk side is the bounded one.
      double area = 0.0;
      constexpr int kLoop = 256;
      for (int i = 0; i < kLoop; ++i)
        area += cross(curve.point(2 * kPi * i / kLoop), curve.point(2 * kPi * (i + 1) / kLoop));
      r.inside_label = area > 0 ? "interior" : "exterior";
      r.outside_label = area > 0 ? "exterior" : "interior";
      break;
    }
    default:
      // Conformal maps keep the disk on the left of the direction of travel.
      r.inside_label = "left";
      r.outside_label = "right";
  }
  return r;
}

double ArcLengthMap::param_at(double sigma) const {
  if (t.empty()) throw PreconditionError("ArcLengthMap: empty map");
  const double lo = t.front(), hi = t.back();
  const double target = (sigma - lo) / (hi - lo) * total;
  if (target <= 0) return lo;
  if (target >= total) return hi;
  auto it = std::upper_bound(s.begin(), s.end(), target);
  const std::size_t i = static_cast<std::size_t>(it - s.begin());
  const double f = (target - s[i - 1]) / (s[i] - s[i - 1]);
  return t[i - 1] + f * (t[i] - t[i - 1]);
}

ArcLengthMap arc_length_map(const AnalyticCurve& curve, int M) {
  if (M < 2) throw PreconditionError("arc_length_map: need M >= 2");
  ArcLengthMap m;
  const double lo = curve.param_lo(), hi = curve.param_hi();
  const double h = (hi - lo) / M;
  m.t.resize(static_cast<std::size_t>(M) + 1);
  m.s.resize(static_cast<std::size_t>(M) + 1);
  m.t[0] = lo;
  double acc = 0.0;
  for (int i = 0; i < M; ++i) {
    const double a = lo + h * i, b = a + h;
    acc += h / 6 * (std::abs(curve.tangent(a)) + 4 * std::abs(curve.tangent(a + h / 2)) + std::abs(curve.tangent(b)));
    m.t[static_cast<std::size_t>(i) + 1] = b;
    m.s[static_cast<std::size_t>(i) + 1] = acc;
  }
  m.total = acc;
  return m;
}

SampleGrid pullback_arclength(const CurveFn& u, const AnalyticCurve& curve, std::size_t M) {
  if (!curve.periodic()) throw PreconditionError("pullback_arclength: closed curves only");
  const ArcLengthMap map = arc_length_map(curve);
  return SampleGrid::sample([&](double sigma) { return u(curve.point(map.param_at(sigma))); }, M);
}

std::vector<ChartVerdict> classify_exhaustion(const CurveFn& u, const PowerSeries& F,
                                              double injectivity_radius, double a, double b,
                                              double s0, int n_first, int n_last,
                                              const ClassifyConfig& cfg, const PullbackOptions& opt) {
  if (!(a < s0 && s0 < b)) throw PreconditionError("classify_exhaustion: s0 must lie in (a, b)");
  if (n_first < 1 || n_last < n_first) throw PreconditionError("classify_exhaustion: bad chart range");
  std::vector<ChartVerdict> out;
  for (int n = n_first; n <= n_last; ++n) {
    const double lo = a + 1.0 / n, hi = b - 1.0 / n;
    if (!(lo < s0 && s0 < hi)) continue;
    const AnalyticCurve chart = AnalyticCurve::local_chart(F, injectivity_radius, lo, hi);
    const double t0 = std::arg(chart.mobius().inverse(s0));
    out.push_back({lo, hi, transfer_classification(u, chart, t0, cfg, opt)});
  }
  return out;
}

}  // namespace sidext
