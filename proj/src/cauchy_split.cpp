#include "sidext/cauchy_split.hpp"

#include <cmath>

namespace sidext {

SplitPair split(const FourierSpec& spec, SplitMode mode) {
  const int N = spec.N();
  SplitPair p;
  p.mode = mode;
  p.N = N;
  p.source = spec.source();
  p.f.coeffs.resize(static_cast<std::size_t>(N + 1));
  p.g.coeffs.resize(static_cast<std::size_t>(N + 1));
  p.f.domain_radius = 1.0;
  p.g.domain_radius = 1.0;
  for (int n = 0; n <= N; ++n) p.f.coeffs[static_cast<std::size_t>(n)] = spec[n];
  for (int k = 1; k <= N; ++k) {
    cplx a = spec[-k];
    p.g.coeffs[static_cast<std::size_t>(k)] = (mode == SplitMode::conjugated) ? std::conj(a) : a;
  }
  return p;
}

FourierSpec reconstruct(const SplitPair& pair) {
  const int N = pair.N;
  if (pair.f.K() != N || pair.g.K() != N)
    throw PreconditionError("reconstruct: pair truncation orders disagree");
  if (pair.g.coeffs[0] != cplx{}) throw PreconditionError("reconstruct: g has a constant term");
  std::vector<cplx> dense(static_cast<std::size_t>(2 * N + 1));
  for (int n = 0; n <= N; ++n)
    dense[static_cast<std::size_t>(N + n)] = pair.f.coeffs[static_cast<std::size_t>(n)];
  for (int k = 1; k <= N; ++k) {
    cplx b = pair.g.coeffs[static_cast<std::size_t>(k)];
    dense[static_cast<std::size_t>(N - k)] = (pair.mode == SplitMode::conjugated) ? std::conj(b) : b;
  }
  return FourierSpec::from_dense(std::move(dense), pair.source);
}

cplx cauchy_eval_inside(const FourierSpec& spec, cplx z, int quadrature_points) {
  if (std::abs(z) >= 1.0) throw PreconditionError("cauchy_eval_inside: |z| must be below 1");
  if (std::abs(z) > 0.99) throw PreconditionError("cauchy_eval_inside: |z| exceeds 0.99");
  const std::size_t M = static_cast<std::size_t>(quadrature_points);
  std::vector<cplx> u;
  if (M >= 4 && (M & (M - 1)) == 0 && M > static_cast<std::size_t>(2 * spec.N())) {
    u = synthesize_grid(spec, M);
  } else {
    u.resize(M);
    for (std::size_t j = 0; j < M; ++j) u[j] = synthesize(spec, 2.0 * kPi * j / M);
  }
  cplx sum{};
  for (std::size_t j = 0; j < M; ++j) {
    const cplx w = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M));
    sum += u[j] * w / (w - z);
  }
  return sum / static_cast<double>(M);
}

cplx eval_exterior(const PowerSeries& g, cplx z) {
  if (std::abs(z) <= 1.0) throw PreconditionError("eval_exterior: |z| must exceed 1");
  if (std::abs(z) < 1.01) throw PreconditionError("eval_exterior: |z| below 1.01");
  const cplx w = 1.0 / z;
  cplx acc{};
  for (int k = g.K(); k >= 1; --k) acc = (acc + g.coeffs[static_cast<std::size_t>(k)]) * w;
  return acc;
}

cplx eval_boundary(const SplitPair& pair, double theta) {
  const cplx z = std::polar(1.0, theta);
  cplx f = pair.f.eval(z);
  cplx acc{};
  if (pair.mode == SplitMode::plain) {
    const cplx w = std::conj(z);
    for (int k = pair.g.K(); k >= 1; --k) acc = (acc + pair.g.coeffs[static_cast<std::size_t>(k)]) * w;
    return f + acc;
  }
  for (int k = pair.g.K(); k >= 1; --k) acc = (acc + pair.g.coeffs[static_cast<std::size_t>(k)]) * z;
  return f + std::conj(acc);
}

PowerSeries invert_exterior(const FourierSpec& spec) {
  PowerSeries s;
  s.domain_radius = 1.0;
  s.coeffs.resize(static_cast<std::size_t>(spec.N() + 1));
  for (int n = 1; n <= spec.N(); ++n) s.coeffs[static_cast<std::size_t>(n)] = spec[-n];
  return s;
}

}  // namespace sidext
