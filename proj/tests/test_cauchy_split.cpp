#include <doctest.h>

#include <cmath>
#include <random>

#include "sidext/cauchy_split.hpp"

using namespace sidext;

namespace {

FourierSpec random_trig(std::mt19937_64& rng, int deg) {
  std::normal_distribution<double> n01;
  std::vector<std::pair<int, cplx>> c;
  for (int n = -deg; n <= deg; ++n) c.emplace_back(n, cplx(n01(rng), n01(rng)) / (1.0 + std::abs(n)));
  return FourierSpec::from_coeffs(c, deg);
}

cplx at(const PowerSeries& s, int k) {
  return k <= s.K() ? s.coeffs[static_cast<std::size_t>(k)] : cplx{};
}

}  // namespace

TEST_CASE("plain split partitions the spectrum") {
  auto u = FourierSpec::from_coeffs({{1, 1.0}, {-3, 2.0}}, 4);
  auto p = split(u, SplitMode::plain);
  CHECK(at(p.f, 1) == cplx(1.0));
  CHECK(at(p.f, 0) == cplx(0.0));
  CHECK(at(p.g, 3) == cplx(2.0));
  CHECK(at(p.g, 0) == cplx(0.0));
  for (int k = 0; k <= p.f.K(); ++k)
    if (k != 1) CHECK(at(p.f, k) == cplx{});
}

TEST_CASE("constant tables land in f") {
  for (auto mode : {SplitMode::plain, SplitMode::conjugated}) {
    auto p = split(FourierSpec::from_coeffs({{0, cplx(2.5, -1.0)}}, 4), mode);
    CHECK(at(p.f, 0) == cplx(2.5, -1.0));
    for (int k = 0; k <= p.g.K(); ++k) CHECK(at(p.g, k) == cplx{});
  }
}

TEST_CASE("conjugated split stores conjugate amplitudes") {
  auto p = split(FourierSpec::from_coeffs({{-2, cplx(0, 1)}}, 4), SplitMode::conjugated);
  CHECK(at(p.g, 2) == cplx(0, -1));
  // The boundary value conj(g) restores the original harmonic.
  for (double t : {0.0, 0.9, 2.2}) CHECK(std::abs(eval_boundary(p, t) - cplx(0, 1) * std::polar(1.0, -2 * t)) < 1e-15);
}

TEST_CASE("reconstruct examples") {
  SplitPair one;
  one.f = PowerSeries::from_coeffs({1.0, 0.0, 0.0});
  one.g = PowerSeries::from_coeffs({0.0, 0.0, 0.0});
  one.N = 2;
  auto u = reconstruct(one);
  one.N = 3;
  CHECK_THROWS_AS(reconstruct(one), PreconditionError);
  CHECK(u[0] == cplx(1.0));
  CHECK(u[1] == cplx{});
  CHECK(u[-1] == cplx{});

  auto cos2 = FourierSpec::from_coeffs({{1, 1.0}, {-1, 1.0}}, 4);
  auto back = reconstruct(split(cos2));
  CHECK(back[1] == cplx(1.0));
  CHECK(back[-1] == cplx(1.0));
  CHECK(std::abs(synthesize(back, 0.4) - 2 * std::cos(0.4)) < 1e-15);
}

TEST_CASE("cauchy integral examples") {
  auto e1 = FourierSpec::from_coeffs({{1, 1.0}}, 4);
  CHECK(std::abs(cauchy_eval_inside(e1, 0.5, 64) - 0.5) < 1e-14);
  auto em1 = FourierSpec::from_coeffs({{-1, 1.0}}, 4);
  CHECK(std::abs(cauchy_eval_inside(em1, 0.3, 64)) < 1e-14);
  auto one = FourierSpec::from_coeffs({{0, 1.0}}, 4);
  CHECK(std::abs(cauchy_eval_inside(one, cplx(0, 0.7), 256) - 1.0) < 1e-14);
  CHECK_THROWS_AS(cauchy_eval_inside(one, 1.0, 64), PreconditionError);
  CHECK_THROWS_AS(cauchy_eval_inside(one, cplx(0, -1.2), 64), PreconditionError);
}

TEST_CASE("exterior evaluation examples") {
  auto p = split(FourierSpec::from_coeffs({{-1, 1.0}}, 4));
  CHECK(std::abs(eval_exterior(p.g, 2.0) - 0.5) < 1e-15);
  auto q = split(FourierSpec::from_coeffs({{-2, 4.0}}, 4));
  CHECK(std::abs(eval_exterior(q.g, cplx(0, 2)) + 1.0) < 1e-15);
  auto z = split(FourierSpec::from_coeffs({{3, 1.0}}, 4));
  CHECK(eval_exterior(z.g, cplx(3, 4)) == cplx{});
  CHECK_THROWS_AS(eval_exterior(p.g, 0.5), PreconditionError);
  CHECK_THROWS_AS(eval_exterior(p.g, 1.0), PreconditionError);
  // Vanishes at infinity.
  CHECK(std::abs(eval_exterior(p.g, 1e8)) < 1e-7);
}

TEST_CASE("round trip is exact and split is idempotent") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto u = random_trig(rng, 40);
    for (auto mode : {SplitMode::plain, SplitMode::conjugated}) {
      auto p = split(u, mode);
      auto back = reconstruct(p);
      bool exact = back.N() == u.N();
      for (int n = -u.N(); n <= u.N(); ++n) exact = exact && back[n] == u[n];
      CHECK(exact);
      CHECK(split(back, mode) == p);
    }
  }
}

TEST_CASE("projections are linear") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_trig(rng, 16), b = random_trig(rng, 16);
    const cplx alpha(0.7, -0.2), beta(-1.5, 0.9);
    std::vector<std::pair<int, cplx>> mix;
    for (int n = -16; n <= 16; ++n) mix.emplace_back(n, alpha * a[n] + beta * b[n]);
    for (auto mode : {SplitMode::plain, SplitMode::conjugated}) {
      auto pa = split(a, mode), pb = split(b, mode), pm = split(FourierSpec::from_coeffs(mix, 16), mode);
      double err = 0.0;
      for (int k = 0; k <= 16; ++k) err = std::max(err, std::abs(at(pm.f, k) - alpha * at(pa.f, k) - beta * at(pb.f, k)));
      // Conjugated g is conjugate-linear in u.
      const cplx ga = mode == SplitMode::plain ? alpha : std::conj(alpha);
      const cplx gb = mode == SplitMode::plain ? beta : std::conj(beta);
      for (int k = 0; k <= 16; ++k) err = std::max(err, std::abs(at(pm.g, k) - ga * at(pa.g, k) - gb * at(pb.g, k)));
      CHECK(err < 1e-12);
    }
  }
}

TEST_CASE("cauchy integral agrees with the interior series") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto u = random_trig(rng, 64);
    auto p = split(u);
    const cplx z = std::polar(0.9 * std::sqrt(u01(rng)), 2 * kPi * u01(rng));
    CHECK(std::abs(cauchy_eval_inside(u, z, 4096) - p.f.eval(z)) <= 1e-8);
  }
}

TEST_CASE("inverted exterior part matches exterior evaluation") {
  std::mt19937_64 rng(13);
  auto u = random_trig(rng, 12);
  auto inv = invert_exterior(u);
  auto p = split(u);
  for (cplx z : {cplx(1.5, 0.2), cplx(-2.0, 1.0), cplx(0.3, -1.1)})
    CHECK(std::abs(inv.eval(1.0 / z) - eval_exterior(p.g, z)) < 1e-13);
}

TEST_CASE("boundary value restores synthesis") {
  std::mt19937_64 rng(17);
  auto u = random_trig(rng, 20);
  for (auto mode : {SplitMode::plain, SplitMode::conjugated}) {
    auto p = split(u, mode);
    for (double t : {0.1, 1.7, 4.0}) CHECK(std::abs(eval_boundary(p, t) - synthesize(u, t)) < 1e-13);
  }
}
