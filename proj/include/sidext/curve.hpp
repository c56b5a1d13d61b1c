#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sidext/borel.hpp"
#include "sidext/extend_class.hpp"
#include "sidext/fourier.hpp"
#include "sidext/power_series.hpp"

namespace sidext {

/// z -> (delta - gamma) (i+1)/(i-1) (z-1)/(z+1) + gamma, sending 1 to gamma and i to delta.
struct MobiusMap {
  cplx gamma, delta, A;
  cplx operator()(cplx z) const;
  cplx inverse(cplx w) const;
  cplx derivative(cplx z) const;
};

MobiusMap mobius_segment(cplx gamma, cplx delta);

enum class CurveKind { circle, segment, jordan_annulus, local_chart };
std::string to_string(CurveKind k);

class AnalyticCurve {
 public:
  static AnalyticCurve circle();
  static AnalyticCurve segment(cplx gamma, cplx delta);
  /// Phi(z) = sum phi_n z^n on r < |z| < R; rejected unless injective on the check mesh.
  static AnalyticCurve jordan_annulus(std::vector<std::pair<int, cplx>> phi, double r, double R);
  /// gamma(s) = F(s) for real s in [a, b], reached from the quarter arc through a Moebius map.
  static AnalyticCurve local_chart(PowerSeries F, double injectivity_radius, double a, double b);

  CurveKind kind() const { return kind_; }
  bool periodic() const { return kind_ == CurveKind::circle || kind_ == CurveKind::jordan_annulus; }
  /// Parameter range on the unit circle: [0, 2 pi) for closed curves, the quarter arc otherwise.
  double param_lo() const { return 0.0; }
  double param_hi() const { return periodic() ? 2 * kPi : kPi / 2; }

  cplx point(double t) const;
  /// d point / dt.
  cplx tangent(double t) const;
  /// Circle parameter whose image is closest to w (Newton polish after a scan).
  double parameter_of(cplx w) const;

  const MobiusMap& mobius() const { return mobius_; }
  const std::vector<std::pair<int, cplx>>& phi() const { return phi_; }
  const PowerSeries& chart() const { return chart_; }
  double inner_radius() const { return r_; }
  double outer_radius() const { return R_; }
  double chart_radius() const { return chart_radius_; }
  double chart_lo() const { return a_; }
  double chart_hi() const { return b_; }

 private:
  AnalyticCurve() = default;
  cplx phi_eval(cplx z) const;
  cplx phi_derivative(cplx z) const;

  CurveKind kind_ = CurveKind::circle;
  MobiusMap mobius_{};
  std::vector<std::pair<int, cplx>> phi_;
  double r_ = 0.0, R_ = 0.0;
  PowerSeries chart_;
  double chart_radius_ = 0.0, a_ = 0.0, b_ = 0.0;
};

using CurveFn = std::function<cplx(cplx)>;

/// t -> u(point(t)).
RealFn pullback_fn(const CurveFn& u, const AnalyticCurve& curve);

struct PullbackOptions {
  std::size_t M = 8192;       ///< grid for closed curves
  std::size_t arc_M = 32768;  ///< grid for open arcs; the closing bridge needs the finer grid
  int bridge_order = 8;       ///< Borel order used to close up open arcs
};

/// Samples of u o phi on the circle grid. Open arcs are first closed up by a jet bridge.
SampleGrid pullback(const CurveFn& u, const AnalyticCurve& curve, const PullbackOptions& opt = {});

struct TransferVerdict {
  SideVerdict verdict;  ///< computed in the circle model at e^{i t0}
  double t0 = 0.0;
  cplx curve_point;
  std::string inside_label, outside_label;
};

TransferVerdict transfer_classification(const CurveFn& u, const AnalyticCurve& curve, double t0,
                                        const ClassifyConfig& cfg = {},
                                        const PullbackOptions& opt = {});

/// Circle parameter reached after normalized arc length sigma in [0, 2 pi).
struct ArcLengthMap {
  std::vector<double> t, s;
  double total = 0.0;
  double param_at(double sigma) const;
};
ArcLengthMap arc_length_map(const AnalyticCurve& curve, int M = 4096);

/// Pullback sampled at equal arc-length steps (closed curves only).
SampleGrid pullback_arclength(const CurveFn& u, const AnalyticCurve& curve, std::size_t M);

struct ChartVerdict {
  double lo = 0.0, hi = 0.0;
  TransferVerdict result;
};

/// Classification at s0 on the charts [a + 1/n, b - 1/n], n = n_first..n_last, that contain s0.
std::vector<ChartVerdict> classify_exhaustion(const CurveFn& u, const PowerSeries& F,
                                              double injectivity_radius, double a, double b,
                                              double s0, int n_first, int n_last,
                                              const ClassifyConfig& cfg = {},
                                              const PullbackOptions& opt = {});

}  // namespace sidext
