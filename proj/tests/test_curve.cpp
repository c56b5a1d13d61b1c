#include <doctest.h>

#include <cmath>
#include <random>

#include "sidext/curve.hpp"

using namespace sidext;

namespace {

// Slowly decaying lacunary series on the circle: a_{2^n} = 2^-n up to 2^11.
cplx slow_lacunary(cplx w) {
  cplx s{};
  for (int n = 0; n <= 11; ++n) s += std::exp2(-n) * std::pow(w, 1 << n);
  return s;
}

AnalyticCurve joukowski(double c) { return AnalyticCurve::jordan_annulus({{1, 1.0}, {-1, c}}, 0.5, 2.0); }

// Pullback grid evaluated directly from the curve formula.
SampleGrid direct_pullback(const CurveFn& u, const std::function<cplx(cplx)>& phi, std::size_t M) {
  SampleGrid g;
  g.values.resize(M);
  for (std::size_t j = 0; j < M; ++j) g.values[j] = u(phi(std::polar(1.0, 2 * kPi * double(j) / double(M))));
  return g;
}

void same_status(const SideVerdict& a, const SideVerdict& b) {
  CHECK(a.outside == b.outside);
  CHECK(a.inside == b.inside);
  CHECK(a.disk == b.disk);
}

}  // namespace

TEST_CASE("moebius map of the quarter arc") {
  const cplx g(0.2, -1.0), d(1.5, 0.7);
  const MobiusMap m = mobius_segment(g, d);
  CHECK(std::abs(m(1.0) - g) < 1e-14);
  CHECK(std::abs(m(cplx(0, 1)) - d) < 1e-14);
  for (int i = 0; i < 100; ++i) {
    const double t = kPi / 2 * (i + 0.5) / 100;
    const cplx z = std::polar(1.0, t), w = m(z);
    CHECK(std::abs(m.inverse(w) - z) < 1e-12);
    const cplx s = (w - g) / (d - g);
    CHECK(std::abs(s.imag()) < 1e-12);
    CHECK(s.real() > 0.0);
    CHECK(s.real() < 1.0);
    const double h = 1e-6;
    const cplx fd = (m(z + h) - m(z - h)) / (2 * h);
    CHECK(std::abs(fd - m.derivative(z)) < 1e-6 * std::abs(m.derivative(z)));
  }
  CHECK_THROWS_AS(mobius_segment(g, g), PreconditionError);
}

TEST_CASE("curve points, tangents and parameters") {
  const auto circ = AnalyticCurve::circle();
  CHECK(std::abs(circ.point(1.0) - std::polar(1.0, 1.0)) < 1e-15);
  CHECK(circ.parameter_of(std::polar(1.0, 5.0)) == doctest::Approx(5.0));

  const auto seg = AnalyticCurve::segment(0.0, 1.0);
  CHECK(std::abs(seg.point(0.0)) < 1e-14);
  CHECK(std::abs(seg.point(kPi / 2) - 1.0) < 1e-14);
  CHECK_THROWS_AS(seg.point(2.0), PreconditionError);
  CHECK(std::abs(seg.point(seg.parameter_of(0.3)) - 0.3) < 1e-12);

  const auto jk = joukowski(0.1);
  for (double t : {0.3, 2.0, 4.5}) {
    CHECK(std::abs(jk.point(t) - (std::polar(1.0, t) + 0.1 * std::polar(1.0, -t))) < 1e-14);
    CHECK(jk.parameter_of(jk.point(t)) == doctest::Approx(t).epsilon(1e-10));
    const double h = 1e-6;
    CHECK(std::abs((jk.point(t + h) - jk.point(t - h)) / (2 * h) - jk.tangent(t)) < 1e-8);
  }
  CHECK_THROWS_AS(AnalyticCurve::jordan_annulus({{1, 1.0}, {-1, 1.0}}, 0.5, 2.0), PreconditionError);
}

TEST_CASE("pullback examples") {
  const auto circ = AnalyticCurve::circle();
  const CurveFn u = [](cplx w) { return 1.0 / (w - 3.0); };
  const auto g = pullback(u, circ, {256});
  for (std::size_t j = 0; j < 256; ++j)
    CHECK(std::abs(g.values[j] - u(std::polar(1.0, 2 * kPi * double(j) / 256))) < 1e-15);

  const auto seg = AnalyticCurve::segment(0.0, 1.0);
  const RealFn pf = pullback_fn([](cplx w) { return cplx(w.real()); }, seg);
  const double t_half = std::arg(seg.mobius().inverse(0.5));
  CHECK(std::abs(cplx(pf(t_half)) - 0.5) < 1e-13);

  const auto jk = joukowski(0.1);
  const auto gj = pullback([](cplx w) { return cplx(w.real()); }, jk, {512});
  for (std::size_t j = 0; j < 512; ++j) {
    const cplx z = std::polar(1.0, 2 * kPi * double(j) / 512);
    CHECK(std::abs(gj.values[j] - (z + 0.1 / z).real()) < 1e-14);
  }
}

TEST_CASE("open arc pullback keeps the arc values") {
  const auto seg = AnalyticCurve::segment(0.0, 1.0);
  const CurveFn u = [](cplx w) { return 1.0 / (w - 2.0); };
  PullbackOptions opt;
  const auto g = pullback(u, seg, opt);
  REQUIRE(g.values.size() == opt.arc_M);
  const std::size_t quarter = opt.arc_M / 4;
  for (std::size_t j = 1; j < quarter; j += 97) {
    const double t = 2 * kPi * double(j) / double(opt.arc_M);
    CHECK(std::abs(g.values[j] - u(seg.point(t))) < 1e-12);
  }
}

TEST_CASE("circle transfer equals direct classification") {
  const ClassifyConfig cfg;
  const auto circ = AnalyticCurve::circle();
  const CurveFn fns[] = {[](cplx w) { return 1.0 / (w - 2.0); },
                         [](cplx w) { return 1.0 / (w - 0.5); },
                         [](cplx w) { return slow_lacunary(w / std::abs(w)); }};
  for (const auto& u : fns) {
    const auto spec = analyze_samples(direct_pullback(u, [](cplx z) { return z; }, 8192));
    for (double t0 : {0.4, 3.0}) {
      const auto tv = transfer_classification(u, circ, t0, cfg);
      const auto direct = classify_point(spec, std::polar(1.0, t0), cfg);
      same_status(tv.verdict, direct);
      CHECK(tv.inside_label == "inside");
    }
  }
  const auto lac = transfer_classification(fns[2], circ, 1.0, cfg);
  CHECK(lac.verdict.outside == Status::non_extendable);
  CHECK(lac.verdict.disk == Status::non_extendable);
}

TEST_CASE("segment transfer of a rational function") {
  const auto seg = AnalyticCurve::segment(0.0, 1.0);
  const CurveFn u = [](cplx w) { return 1.0 / (w - 2.0); };
  for (double s : {0.3, 0.6}) {
    const double t0 = std::arg(seg.mobius().inverse(s));
    const auto tv = transfer_classification(u, seg, t0);
    CHECK(std::abs(tv.curve_point - s) < 1e-12);
    CHECK(tv.verdict.outside == Status::extendable);
    CHECK(tv.verdict.inside == Status::extendable);
    CHECK(tv.inside_label == "left");
  }
  CHECK_THROWS_AS(transfer_classification(u, seg, 2.0), PreconditionError);
}

TEST_CASE("joukowski transfer matches the pulled-back circle data") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const ClassifyConfig cfg;
  for (double c : {0.05, 0.1}) {
    const auto jk = joukowski(c);
    const auto phi = [c](cplx z) { return z + c / z; };
    for (int trial = 0; trial < 2; ++trial) {
      const cplx p = std::polar(1.5 + unit(rng), 2 * kPi * unit(rng));
      const cplx q = std::polar(0.3 * unit(rng), 2 * kPi * unit(rng));
      const CurveFn u = [p, q](cplx w) { return 1.0 / (w - p) + 0.5 / (w - q); };
      const auto spec = analyze_samples(direct_pullback(u, phi, 8192));
      for (int j = 0; j < 4; ++j) {
        const double t0 = 2 * kPi * (j + unit(rng)) / 4;
        const auto tv = transfer_classification(u, jk, t0, cfg);
        same_status(tv.verdict, classify_point(spec, std::polar(1.0, t0), cfg));
      }
    }
  }
}

TEST_CASE("chart transfer agrees with the segment") {
  PowerSeries F = PowerSeries::from_coeffs({0.5, 1.0}, 4.0, 0.5);
  F.coeffs.resize(33);
  const auto chart = AnalyticCurve::local_chart(F, 2.0, 0.0, 1.0);
  const auto seg = AnalyticCurve::segment(0.0, 1.0);
  const CurveFn u = [](cplx w) { return 1.0 / (w - 2.0); };
  for (double t0 : {0.2, 0.5, 0.8, 1.1, 1.4}) {
    CHECK(std::abs(chart.point(t0) - seg.point(t0)) < 1e-12);
    same_status(transfer_classification(u, chart, t0).verdict,
                transfer_classification(u, seg, t0).verdict);
  }
  CHECK_THROWS_AS(AnalyticCurve::local_chart(F, 0.3, 0.0, 1.0), PreconditionError);
}

TEST_CASE("arc length parametrization") {
  const auto circ = AnalyticCurve::circle();
  const auto m = arc_length_map(circ, 1024);
  CHECK(m.total == doctest::Approx(2 * kPi).epsilon(1e-10));
  for (double s : {0.5, 2.0, 5.0}) CHECK(m.param_at(s) == doctest::Approx(s).epsilon(1e-9));

  const double c = 0.1;
  const auto jk = joukowski(c);
  const auto mj = arc_length_map(jk, 4096);
  // Composite Simpson on |Phi'(e^{it})| = |1 - c e^{-2it}|.
  double ref = 0.0;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    const double t = 2 * kPi * i / n, w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    ref += w * std::abs(1.0 - c * std::polar(1.0, -2 * t));
  }
  ref *= 2 * kPi / n / 3;
  CHECK(mj.total == doctest::Approx(ref).epsilon(1e-8));

  const auto g = pullback_arclength([](cplx w) { return w; }, jk, 64);
  REQUIRE(g.values.size() == 64);
  for (std::size_t j = 0; j + 1 < 64; ++j)
    CHECK(std::abs(g.values[j + 1] - g.values[j]) == doctest::Approx(ref / 64).epsilon(1e-3));
}

TEST_CASE("exhaustion by charts") {
  PowerSeries F = PowerSeries::from_coeffs({0.5, 1.0}, 4.0, 0.5);
  F.coeffs.resize(33);
  const CurveFn u = [](cplx w) { return 1.0 / (w - 2.0); };
  const auto res = classify_exhaustion(u, F, 2.0, 0.0, 1.0, 0.5, 3, 5);
  REQUIRE(res.size() == 3);
  for (const auto& r : res) {
    CHECK(r.lo < 0.5);
    CHECK(r.hi > 0.5);
    CHECK(std::abs(r.result.curve_point - 0.5) < 1e-12);
    CHECK(r.result.verdict.disk == Status::extendable);
  }
  CHECK_THROWS_AS(classify_exhaustion(u, F, 2.0, 0.0, 1.0, 1.5, 3, 5), PreconditionError);
}
