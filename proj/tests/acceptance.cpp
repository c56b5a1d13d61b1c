// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sidext/borel.hpp"
#include "sidext/cauchy_split.hpp"
#include "sidext/curve.hpp"
#include "sidext/extend_class.hpp"
#include "sidext/io.hpp"
#include "sidext/morera.hpp"
#include "sidext/power_series.hpp"
#include "sidext/probe.hpp"

using namespace sidext;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  ///< wall-clock limit, 0 when none is stated
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

cplx grid_point(int j, int n) { return std::polar(1.0, 2 * kPi * j / n); }

FourierSpec random_trig(std::mt19937_64& rng, int deg) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<int, cplx>> c;
  for (int n = -deg; n <= deg; ++n) c.emplace_back(n, std::polar(u(rng), 2 * kPi * u(rng)));
  return FourierSpec::from_coeffs(c, 64);
}

// 1/(e^{it} - 2) = -sum_{n >= 0} 2^{-n-1} e^{int}.
FourierSpec exact_rational(int N) {
  std::vector<std::pair<int, cplx>> c;
  for (int n = 0; n <= N; ++n) c.emplace_back(n, -std::exp2(-n - 1.0));
  return FourierSpec::from_coeffs(c, N);
}

FourierSpec exact_lacunary(int N) {
  std::vector<std::pair<int, cplx>> c;
  for (int n = 0; (1 << n) <= N; ++n) c.emplace_back(1 << n, std::exp2(-double(n) * n));
  return FourierSpec::from_coeffs(c, N);
}

Outcome split_round_trip() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = random_trig(rng, 64);
    const auto pair = split(u);
    for (int j = 0; j < 512; ++j) {
      const double t = 2 * kPi * j / 512;
      worst = std::max(worst, std::abs(synthesize(u, t) - eval_boundary(pair, t)));
    }
  }
  return {worst <= 1e-10, "max error " + fmt("%.3g", worst)};
}

Outcome radius_estimator() {
  double worst = 0.0;
  for (double r : {0.5, 0.9, 1.0, 1.5, 2.0}) {
    // c_k = r^-k stored as unit normalized coefficients with scale r.
    PowerSeries s;
    s.coeffs.assign(2049, 1.0);
    s.scale = r;
    worst = std::max(worst, std::abs(radius(s).value - r) / r);
  }
  std::vector<cplx> lac(1025, 0.0);
  for (int n = 0; (1 << n) <= 1024; ++n) lac[std::size_t(1) << n] = std::exp2(-double(n) * n);
  const double lr = radius(PowerSeries::from_coeffs(lac)).value;
  const bool ok = worst <= 0.02 && std::abs(lr - 1.0) <= 0.05;
  return {ok, "geometric rel err " + fmt("%.3g", worst) + ", lacunary " + fmt("%.4f", lr)};
}

Outcome recentering() {
  std::vector<cplx> c(1025, 1.0);
  const auto r = recenter(PowerSeries::from_coeffs(c), 0.5);
  double worst = 0.0;
  for (int k = 0; k <= 20; ++k)
    worst = std::max(worst, std::abs(r.coefficient(k) - std::exp2(k + 1)) / std::exp2(k + 1));
  const double rr = radius(r).value;
  const bool ok = worst <= 1e-8 && std::abs(rr - 0.5) <= 0.03 * 0.5;
  return {ok, "b_k rel err " + fmt("%.3g", worst) + ", radius " + fmt("%.4f", rr)};
}

Outcome one_sided_lacunary() {
  const ClassifyConfig cfg;
  const auto lac = builtin_spec("lacunary", 4096), mirror = builtin_spec("conjugate-lacunary", 4096);
  const auto a = classify_grid(lac, 16, cfg), b = classify_grid(mirror, 16, cfg);
  int status_points = 0, margin_points = 0, mirror_points = 0;
  double worst_margin = -INFINITY;
  for (int j = 0; j < 16; ++j) {
    const auto& v = a[std::size_t(j)];
    bool margins_ok = true;
    for (const auto& p : v.outside_margins) {
      worst_margin = std::max(worst_margin, p.margin);
      margins_ok = margins_ok && p.margin <= cfg.tau;
    }
    status_points += v.outside == Status::non_extendable && v.inside == Status::extendable;
    margin_points += margins_ok;
    const auto& m = b[std::size_t(j)];
    mirror_points += m.inside == Status::non_extendable && m.outside == Status::extendable;
  }
  std::ostringstream d;
  d << "statuses " << status_points << "/16, margins <= tau " << margin_points << "/16 (max "
    << fmt("%.4f", worst_margin) << "), mirrored " << mirror_points << "/16";
  return {status_points == 16 && margin_points == 16 && mirror_points == 16, d.str()};
}

Outcome inversion_duality() {
  CandidateProfile prof;
  prof.side = TailSide::both;
  int agree = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto u = sample_candidate(100 + seed, prof), m = negate_index(u);
    for (int j = 0; j < 8; ++j) {
      const cplx z0 = grid_point(j, 8);
      agree += classify_point(u, z0).inside == classify_point(m, std::conj(z0)).outside;
      ++total;
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " statuses agree"};
}

Outcome rotation_equivariance() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  CandidateProfile prof;
  prof.side = TailSide::both;
  int agree = 0, total = 0;
  double worst = 0.0;
  for (int c = 0; c < 5; ++c) {
    const auto u = sample_candidate(rng(), prof);
    for (int r = 0; r < 5; ++r) {
      const double alpha = 2 * kPi * u01(rng);
      const auto ru = rotate(u, alpha);
      for (int j = 0; j < 8; ++j) {
        const cplx z0 = grid_point(j, 8);
        const auto a = classify_point(u, z0), b = classify_point(ru, z0 * std::polar(1.0, alpha));
        ++total;
        if (a.outside != b.outside || a.inside != b.inside || a.disk != b.disk) continue;
        if (a.outside_margins.size() != b.outside_margins.size() ||
            a.inside_margins.size() != b.inside_margins.size())
          continue;
        ++agree;
        auto compare = [&](const std::vector<PointMargin>& x, const std::vector<PointMargin>& y) {
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (std::isinf(x[i].margin) && std::isinf(y[i].margin)) continue;
            worst = std::max(worst, std::abs(x[i].margin - y[i].margin));
          }
        };
        compare(a.outside_margins, b.outside_margins);
        compare(a.inside_margins, b.inside_margins);
      }
    }
  }
  std::ostringstream d;
  d << agree << "/" << total << " statuses agree, max margin change " << fmt("%.3g", worst);
  return {agree == total && worst <= 1e-9, d.str()};
}

Outcome morera_gluing() {
  GlueConfig cfg;
  cfg.quadrature_points = 64;
  const auto hol = glue_check([](cplx z) { return 1.0 / (z - 2.0); }, CurveGraph::segment(-0.5, 0.5), 0.0, 1.0, 4, cfg);
  // The window is shifted off the dyadic lines so the jump runs through square interiors.
  const auto jmp = glue_check([](cplx z) { return z.imag() >= 0 ? z : z + 0.01; },
                              CurveGraph::horizontal(0.0, -1.0, 1.0), cplx(0.0, 0.03), 1.0, 4, cfg);
  ContourSpec window;
  window.center = 0.0;
  window.side = 1.0;
  const double area_err = std::abs(std::abs(contour_integral([](cplx z) { return std::conj(z); }, window, 64)) - 2.0);
  const bool ok = hol.max_residual <= 1e-7 && hol.verdict == GlueVerdict::holomorphic_consistent &&
                  jmp.max_residual >= 1e-4 && jmp.verdict == GlueVerdict::jump_detected && area_err <= 1e-8;
  return {ok, "holomorphic " + fmt("%.3g", hol.max_residual) + ", jump " + fmt("%.3g", jmp.max_residual) + " (" +
                  to_string(jmp.verdict) + "), conj area err " + fmt("%.3g", area_err)};
}

Outcome borel_bridge() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_jet = [&](double x) {
    JetData j;
    j.point = x;
    for (int n = 0; n <= 8; ++n) {
      const cplx d(u(rng), u(rng));
      j.derivs.push_back(10.0 * d / std::max(1.0, std::abs(d)) * std::abs(u(rng)));
    }
    return j;
  };
  double fd_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto l = random_jet(0.0), r = random_jet(1.0);
    const auto b = jet_bridge(l, r, 8);
    const RealFn f = [&](long double x) { return b.eval(x); };
    const auto fl = one_sided_fd(f, 0.0L, +1, 1e-2L, 6), fr = one_sided_fd(f, 1.0L, -1, 1e-2L, 6);
    for (int n = 0; n <= 6; ++n) {
      fd_err = std::max(fd_err, (double)std::abs(fl[std::size_t(n)] - cplxl(l.derivs[std::size_t(n)])));
      fd_err = std::max(fd_err, (double)std::abs(fr[std::size_t(n)] - cplxl(r.derivs[std::size_t(n)])));
    }
  }
  ArcData arc;
  arc.a = 0.0;
  arc.b = kPi;
  arc.u = [](long double t) { return std::polar(1.0L, t); };
  double seam = 0.0;
  for (const auto& s : extend_arc_to_circle(arc, 6).seam_checks(6)) seam = std::max(seam, s.max_error);
  return {fd_err <= 1e-3 && seam <= 1e-4, "FD err " + fmt("%.3g", fd_err) + ", seam err " + fmt("%.3g", seam)};
}

// Circle parameter of w on the Joukowski curve z + c/z: the root of z^2 - w z + c = 0 on |z| = 1.
cplx joukowski_inverse(cplx w, double c) {
  const cplx s = std::sqrt(w * w - 4.0 * c);
  const cplx a = (w + s) / 2.0, b = (w - s) / 2.0;
  const cplx z = std::abs(std::abs(a) - 1.0) < std::abs(std::abs(b) - 1.0) ? a : b;
  return z / std::abs(z);
}

Outcome curve_transfer() {
  const MobiusMap m = mobius_segment(cplx(-0.3, 0.2), cplx(1.1, 0.9));
  double mob = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx z = std::polar(1.0, kPi / 2 * (i + 0.5) / 100);
    mob = std::max(mob, std::abs(m.inverse(m(z)) - z));
  }

  const double c = 0.1;
  const auto curve = AnalyticCurve::jordan_annulus({{1, 1.0}, {-1, c}}, 0.5, 2.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<CurveFn> fns;
  for (int k = 0; k < 5; ++k) {
    // Poles on both sides of the curve.
    const cplx p = std::polar(1.5 + u01(rng), 2 * kPi * u01(rng)), q = std::polar(0.4 * u01(rng), 2 * kPi * u01(rng));
    const double w = u01(rng);
    fns.push_back([p, q, w](cplx z) { return 1.0 / (z - p) + w / (z - q); });
  }
  for (int k = 0; k < 5; ++k) {
    // Slow lacunary tails in the circle variable, on a random side.
    std::vector<cplx> phase;
    for (int n = 0; n <= 11; ++n) phase.push_back(std::polar(1.0, 2 * kPi * u01(rng)));
    const int side = k % 3;
    fns.push_back([phase, side, c](cplx w) {
      const cplx z = joukowski_inverse(w, c);
      cplx s{};
      for (int n = 0; n <= 11; ++n) {
        const double a = std::exp2(-n);
        if (side != 1) s += a * phase[std::size_t(n)] * std::pow(z, 1 << n);
        if (side != 0) s += a * std::conj(phase[std::size_t(n)]) * std::pow(std::conj(z), 1 << n);
      }
      return s;
    });
  }

  const ClassifyConfig cfg;
  int agree = 0, total = 0, non_ext = 0;
  for (const auto& u : fns) {
    // Circle data evaluated directly from the curve formula.
    SampleGrid g;
    const std::size_t M = PullbackOptions{}.M;
    for (std::size_t j = 0; j < M; ++j) {
      const cplx z = std::polar(1.0, 2 * kPi * double(j) / double(M));
      g.values.push_back(u(z + c / z));
    }
    const auto circle_data = analyze_samples(g);
    for (int j = 0; j < 8; ++j) {
      const double t0 = 2 * kPi * (j + 0.25) / 8;
      const auto tv = transfer_classification(u, curve, t0, cfg);
      const auto cv = classify_point(circle_data, std::polar(1.0, t0), cfg);
      agree += tv.verdict.outside == cv.outside && tv.verdict.inside == cv.inside && tv.verdict.disk == cv.disk;
      non_ext += cv.disk == Status::non_extendable;
      ++total;
    }
  }
  std::ostringstream d;
  d << "moebius err " << fmt("%.3g", mob) << ", " << agree << "/" << total << " statuses agree ("
    << non_ext << " non_extendable)";
  return {mob <= 1e-12 && agree == total, d.str()};
}

Outcome analyticity() {
  const ProbeConfig cfg;
  const auto cos_src = jet_source([](const Jet<long double>& x) { return cos(x); });
  int cos_ok = 0;
  for (int j = 0; j < 16; ++j) {
    const auto p = analyticity_probe(cos_src, 2 * kPi * j / 16, cfg);
    cos_ok += p.verdict == ProbeVerdict::analytic && p.k_star && *p.k_star == 1.0;
  }
  const bool bump_ok = analyticity_probe(flat_bump_source(), 0.0, cfg).verdict == ProbeVerdict::non_analytic;

  const auto rat = exact_rational(512), lac = exact_lacunary(256);
  int lac_non = 0, match = 0, tested = 0;
  for (const FourierSpec* fam : {&rat, &lac}) {
    const auto src = spectral_source(*fam);
    for (int j = 0; j < 8; ++j) {
      const double t0 = 2 * kPi * j / 8;
      const auto p = analyticity_probe(src, t0, cfg);
      const auto v = classify_point(*fam, std::polar(1.0, t0));
      if (fam == &lac) lac_non += p.verdict == ProbeVerdict::non_analytic;
      match += (p.verdict == ProbeVerdict::analytic) == (v.disk == Status::extendable) &&
               p.verdict != ProbeVerdict::inconclusive;
      ++tested;
    }
  }
  std::ostringstream d;
  d << "cos " << cos_ok << "/16, bump " << (bump_ok ? "non_analytic" : "missed") << ", lacunary " << lac_non
    << "/8, probe-classifier match " << match << "/" << tested;
  return {cos_ok == 16 && bump_ok && lac_non == 8 && match == tested, d.str()};
}

Outcome genericity() {
  const CandidateProfile prof;
  const ClassifyConfig cfg;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = classify_grid(sample_candidate(seed, prof), 8, cfg);
    bool all = true;
    for (const auto& v : g) all = all && v.outside == Status::non_extendable;
    hits += all;
  }
  return {hits >= 95, std::to_string(hits) + "/100 samples outside non_extendable on the whole grid"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "split round trip", 1.0, split_round_trip},
      {2, "radius estimator", 1.0, radius_estimator},
      {3, "recentering oracle", 0.0, recentering},
      {4, "one-sided lacunary classification", 10.0, one_sided_lacunary},
      {5, "inversion duality", 0.0, inversion_duality},
      {6, "rotation equivariance", 0.0, rotation_equivariance},
      {7, "morera gluing", 5.0, morera_gluing},
      {8, "borel bridge", 0.0, borel_bridge},
      {9, "curve transfer", 0.0, curve_transfer},
      {10, "analyticity and extendability", 0.0, analyticity},
      {11, "generic lacunary samples", 120.0, genericity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += ", over the " + fmt("%.0f", c.budget_s) + " s budget";
    }
    failed += !o.pass;
    std::printf("%s [%2d] %-36s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
