#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sidext/fourier.hpp"
#include "sidext/power_series.hpp"

namespace sidext {

using ComplexFn = std::function<cplx(cplx)>;

// A curve L consumed as a graph y = g(x) sampled at increasing x, linearly interpolated.
struct CurveGraph {
  std::vector<double> xs, ys;

  static CurveGraph segment(cplx a, cplx b);
  static CurveGraph horizontal(double y, double x_lo, double x_hi);
  void validate() const;
  double y_at(double x) const;  ///< clamps outside the sampled range
  /// True when L passes through the open square.
  bool crosses(cplx center, double side) const;
};

enum class ContourKind { square, translated_half };

struct ContourSpec {
  ContourKind kind = ContourKind::square;
  cplx center;
  double side = 1.0;
  CurveGraph curve;     ///< needed for translated_half
  double t0 = -1.0;     ///< translation i*lambda*t0 of the lower half contour
  double lambda = 0.0;

  void validate() const;
};

struct GaussLegendre {
  std::vector<double> nodes, weights;  ///< on [-1, 1]
};
GaussLegendre gauss_legendre(int n);

/// Composite Gauss-Legendre value of the closed integral of f dz, n nodes per side.
cplx contour_integral(const ComplexFn& f, const ContourSpec& c, int n);

enum class GlueVerdict { holomorphic_consistent, jump_detected, indeterminate };
std::string to_string(GlueVerdict v);

struct SubSquare {
  cplx center;
  double side = 0.0;
  double residual = 0.0;  ///< |integral| / perimeter
  bool crosses_curve = false;
};

struct GlueReport {
  std::vector<SubSquare> squares;
  double max_residual = 0.0;
  GlueVerdict verdict = GlueVerdict::indeterminate;
  int quadrature_points = 0;
  int depth = 0;
  double theta_ok = 1e-7, theta_jump = 1e-4;
};

struct GlueConfig {
  int quadrature_points = 64;
  double theta_ok = 1e-7;
  double theta_jump = 1e-4;
};

GlueReport glue_check(const ComplexFn& f, const CurveGraph& L, cplx window_center,
                      double window_side, int depth, const GlueConfig& cfg = {});

struct TranslationRow {
  double lambda = 0.0;
  cplx integral;
};

struct TranslationTable {
  std::vector<TranslationRow> rows;
  cplx untranslated;
  cplx extrapolated;   ///< linear extrapolation of the last two rows to lambda = 0
  double limit_error = 0.0;  ///< |extrapolated - untranslated|
};

TranslationTable translated_contour_limit(const ComplexFn& f, const ContourSpec& c,
                                          const std::vector<double>& lambdas, int n = 64);

/// (1/2 pi) \int P_r(t) f(e^{i(theta - t)}) dt by the trapezoid rule with M nodes.
cplx poisson_average(const PowerSeries& f, double r, double theta, int M = 1024);

}  // namespace sidext
