#include "sidext/morera.hpp"

#include <algorithm>
#include <cmath>

namespace sidext {

CurveGraph CurveGraph::segment(cplx a, cplx b) {
  if (a.real() == b.real()) throw PreconditionError("CurveGraph: vertical segments are not graphs");
  if (a.real() > b.real()) std::swap(a, b);
  return {{a.real(), b.real()}, {a.imag(), b.imag()}};
}

CurveGraph CurveGraph::horizontal(double y, double x_lo, double x_hi) {
  return segment({x_lo, y}, {x_hi, y});
}

void CurveGraph::validate() const {
  if (xs.size() < 2 || xs.size() != ys.size()) throw PreconditionError("CurveGraph: need >= 2 matching samples");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) throw PreconditionError("CurveGraph: non-finite sample");
    if (i > 0 && !(xs[i] > xs[i - 1])) throw PreconditionError("CurveGraph: x samples must increase");
  }
}

double CurveGraph::y_at(double x) const {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double f = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] * (1 - f) + ys[i] * f;
}

bool CurveGraph::crosses(cplx center, double side) const {
  const double x_lo = center.real() - side / 2, x_hi = center.real() + side / 2;
  const double y_lo = center.imag() - side / 2, y_hi = center.imag() + side / 2;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    double a = std::max(xs[i - 1], x_lo), b = std::min(xs[i], x_hi);
    if (!(a < b)) continue;
    double ya = y_at(a), yb = y_at(b);
    if (std::max(ya, yb) > y_lo && std::min(ya, yb) < y_hi) return true;
  }
  return false;
}

void ContourSpec::validate() const {
  if (!(side > 0)) throw PreconditionError("ContourSpec: side must be positive");
  if (kind == ContourKind::translated_half) {
    curve.validate();
    const double xl = center.real() - side / 2, xr = center.real() + side / 2;
    if (curve.xs.front() > xl || curve.xs.back() < xr)
      throw PreconditionError("ContourSpec: curve must span the square");
    for (double x : {xl, xr}) {
      double y = curve.y_at(x);
      if (!(std::abs(y - center.imag()) < side / 2))
        throw PreconditionError("ContourSpec: curve must cross the vertical sides");
    }
  }
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be positive");
  GaussLegendre g;
  g.nodes.resize(static_cast<std::size_t>(n));
  g.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[static_cast<std::size_t>(i)] = -x;
    g.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    g.weights[static_cast<std::size_t>(i)] = w;
    g.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return g;
}

namespace {

cplx segment_integral(const ComplexFn& f, cplx a, cplx b, const GaussLegendre& gl) {
  const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx acc{};
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return acc * half;
}

cplx polyline_integral(const ComplexFn& f, const std::vector<cplx>& pts, const GaussLegendre& gl) {
  cplx acc{};
  for (std::size_t i = 1; i < pts.size(); ++i) acc += segment_integral(f, pts[i - 1], pts[i], gl);
  return acc;
}

std::vector<cplx> square_path(cplx c, double s) {
  const double h = s / 2;
  return {c + cplx(-h, -h), c + cplx(h, -h), c + cplx(h, h), c + cplx(-h, h), c + cplx(-h, -h)};
}

// Lower half of the square below L, counterclockwise, shifted by `shift`.
std::vector<cplx> lower_half_path(const ContourSpec& c, cplx shift) {
  const double h = c.side / 2;
  const double xl = c.center.real() - h, xr = c.center.real() + h, yb = c.center.imag() - h;
  std::vector<cplx> p;
  p.emplace_back(xl, c.curve.y_at(xl));
  p.emplace_back(xl, yb);
  p.emplace_back(xr, yb);
  p.emplace_back(xr, c.curve.y_at(xr));
  for (std::size_t i = c.curve.xs.size(); i-- > 0;) {
    const double x = c.curve.xs[i];
    if (x > xl && x < xr) p.emplace_back(x, c.curve.ys[i]);
  }
  p.emplace_back(xl, c.curve.y_at(xl));
  for (auto& z : p) z += shift;
  return p;
}

}  // namespace

cplx contour_integral(const ComplexFn& f, const ContourSpec& c, int n) {
  if (n < 16) throw PreconditionError("contour_integral: need at least 16 points per side");
  c.validate();
  const GaussLegendre gl = gauss_legendre(n);
  if (c.kind == ContourKind::square) return polyline_integral(f, square_path(c.center, c.side), gl);
  return polyline_integral(f, lower_half_path(c, cplx(0.0, c.lambda * c.t0)), gl);
}

std::string to_string(GlueVerdict v) {
  switch (v) {
    case GlueVerdict::holomorphic_consistent: return "holomorphic_consistent";
    case GlueVerdict::jump_detected: return "jump_detected";
    default: return "indeterminate";
  }
}

GlueReport glue_check(const ComplexFn& f, const CurveGraph& L, cplx window_center,
                      double window_side, int depth, const GlueConfig& cfg) {
  if (depth < 0 || depth > 6) throw PreconditionError("glue_check: depth must lie in [0, 6]");
  if (!(window_side > 0)) throw PreconditionError("glue_check: window side must be positive");
  if (cfg.quadrature_points < 16) throw PreconditionError("glue_check: need >= 16 points per side");
  L.validate();
  const GaussLegendre gl = gauss_legendre(cfg.quadrature_points);
  GlueReport rep;
  rep.depth = depth;
  rep.quadrature_points = cfg.quadrature_points;
  rep.theta_ok = cfg.theta_ok;
  rep.theta_jump = cfg.theta_jump;
  const int m = 1 << depth;
  const double s = window_side / m;
  const cplx origin = window_center - cplx(window_side / 2, window_side / 2);
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      SubSquare q;
      q.center = origin + cplx((ix + 0.5) * s, (iy + 0.5) * s);
      q.side = s;
      q.residual = std::abs(polyline_integral(f, square_path(q.center, s), gl)) / (4 * s);
      q.crosses_curve = L.crosses(q.center, s);
      rep.max_residual = std::max(rep.max_residual, q.residual);
      rep.squares.push_back(q);
    }
  if (rep.max_residual <= cfg.theta_ok)
    rep.verdict = GlueVerdict::holomorphic_consistent;
  else if (rep.max_residual > cfg.theta_jump)
    rep.verdict = GlueVerdict::jump_detected;
  else
    rep.verdict = GlueVerdict::indeterminate;
  return rep;
}

TranslationTable translated_contour_limit(const ComplexFn& f, const ContourSpec& c,
                                          const std::vector<double>& lambdas, int n) {
  if (c.kind != ContourKind::translated_half)
    throw PreconditionError("translated_contour_limit: contour must be translated_half");
  if (lambdas.empty()) throw PreconditionError("translated_contour_limit: empty schedule");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0)) throw PreconditionError("translated_contour_limit: schedule must be positive");
    if (i > 0 && !(lambdas[i] < lambdas[i - 1]))
      throw PreconditionError("translated_contour_limit: schedule must decrease");
  }
  TranslationTable t;
  ContourSpec cc = c;
  cc.lambda = 0.0;
  t.untranslated = contour_integral(f, cc, n);
  for (double lam : lambdas) {
    cc.lambda = lam;
    t.rows.push_back({lam, contour_integral(f, cc, n)});
  }
  if (t.rows.size() == 1) {
    t.extrapolated = t.rows[0].integral;
  } else {
    const auto& a = t.rows[t.rows.size() - 2];
    const auto& b = t.rows.back();
    t.extrapolated = (a.lambda * b.integral - b.lambda * a.integral) / (a.lambda - b.lambda);
  }
  t.limit_error = std::abs(t.extrapolated - t.untranslated);
  return t;
}

cplx poisson_average(const PowerSeries& f, double r, double theta, int M) {
  if (!(r >= 0 && r < 1)) throw PreconditionError("poisson_average: need 0 <= r < 1");
  cplx acc{};
  for (int j = 0; j < M; ++j) {
    const double t = 2 * kPi * j / M;
    const double P = (1 - r * r) / (1 - 2 * r * std::cos(t) + r * r);
    acc += P * f.eval(std::polar(1.0, theta - t));
  }
  return acc / static_cast<double>(M);
}

}  // namespace sidext
