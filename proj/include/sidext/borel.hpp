#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "sidext/fourier.hpp"

namespace sidext {

using cplxl = std::complex<long double>;
using RealFn = std::function<cplxl(long double)>;

/// Prescribed derivatives d_0..d_K at a point.
struct JetData {
  double point = 0.0;
  std::vector<cplx> derivs;
  int K() const { return static_cast<int>(derivs.size()) - 1; }
};

/// C-infinity cutoff: 1 on |x| <= eps/2, 0 on |x| >= eps.
double smooth_cutoff(double x, double eps);
/// Derivatives 0..order of the cutoff at x.
std::vector<long double> smooth_cutoff_derivatives(long double x, long double eps, int order);

struct BridgeTerm {
  int side = 0;  ///< 0 = anchored at s, 1 = anchored at t
  int order = 0;
  cplx coefficient;  ///< d_n / n!
  double eps = 0.0;
};

struct BridgeFunction {
  double s = 0.0, t = 1.0;
  int K = 0;
  std::vector<BridgeTerm> terms;
  /// When nonempty the bridge is this polynomial in (x - s); used when both jets
  /// come from one polynomial of degree <= K.
  std::vector<cplx> polynomial;

  cplxl eval(long double x) const;
  /// Derivatives 0..order at x.
  std::vector<cplxl> derivatives(long double x, int order) const;
  /// max over the two clusters of sum |d_n|/n! eps_n^n.
  double sup_bound() const;
  /// Half-width of the region next to each endpoint where every cutoff is 1.
  double plateau() const;
};

inline constexpr int kMaxJetOrder = 32;

BridgeFunction jet_bridge(const JetData& left, const JetData& right, int K,
                          int max_order = kMaxJetOrder);

/// One-sided finite-difference derivatives of orders 0..max_order at x0, nodes
/// x0 + dir*h*i. `accuracy` extra nodes beyond the minimum are used per order.
std::vector<cplxl> one_sided_fd(const RealFn& f, long double x0, int dir, long double h,
                                int max_order, int accuracy = 3);

/// Derivatives of f at an interval endpoint by Chebyshev interpolation on the
/// adjacent window [x0, x0 + dir*len].
JetData jet_from_function(const RealFn& f, double x0, int dir, double len, int K);

/// Derivatives at the first node of uniformly spaced samples (step h, moving in dir)
/// from the interpolating polynomial through the first K+3 samples.
JetData jet_from_samples(const std::vector<cplx>& samples, double x0, int dir, double h, int K);

struct SeamCheck {
  double point = 0.0;
  std::vector<double> errors;  ///< |left FD - right FD| per order
  double max_error = 0.0;
};

/// Input on the arc {e^{it}: a <= t <= b}: an evaluable, or uniform samples including both ends.
struct ArcData {
  double a = 0.0, b = kPi;
  RealFn u;
  std::vector<cplx> samples;
  std::optional<JetData> left_jet, right_jet;  ///< at a and at b
};

class PeriodicExtension {
 public:
  PeriodicExtension(ArcData arc, BridgeFunction bridge);

  cplxl eval(long double t) const;
  double a() const { return arc_.a; }
  double b() const { return arc_.b; }
  const BridgeFunction& bridge() const { return bridge_; }
  bool on_arc(double t) const;

  FourierSpec to_fourier(std::size_t M) const;
  /// Finite-difference comparison across both seams, orders 0..K.
  /// h <= 0 picks a step whose stencil stays inside every cutoff plateau.
  std::vector<SeamCheck> seam_checks(int K, double h = 0.0) const;

 private:
  cplxl inner(long double t) const;
  ArcData arc_;
  BridgeFunction bridge_;
};

PeriodicExtension extend_arc_to_circle(const ArcData& arc, int K);

class LineExtension {
 public:
  LineExtension(double gamma, double delta, RealFn u, BridgeFunction left, BridgeFunction right);
  cplxl eval(long double x) const;
  double support_lo() const { return gamma_ - 1.0; }
  double support_hi() const { return delta_ + 1.0; }
  const BridgeFunction& left_bridge() const { return left_; }
  const BridgeFunction& right_bridge() const { return right_; }
  std::vector<SeamCheck> seam_checks(int K, double h = 0.0) const;

 private:
  double gamma_, delta_;
  RealFn u_;
  BridgeFunction left_, right_;
};

LineExtension extend_interval_to_line(double gamma, double delta, const RealFn& u, int K,
                                      std::optional<JetData> left_jet = {},
                                      std::optional<JetData> right_jet = {});

}  // namespace sidext
