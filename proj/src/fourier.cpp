#include "sidext/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sidext {

namespace {

bool is_pow2(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kTiny = 1e-300;

}  // namespace

FourierSpec::FourierSpec(int N, Source source)
    : N_(N), source_(source), a_(static_cast<std::size_t>(2 * N + 1)) {
  if (N < 1) throw PreconditionError("FourierSpec: N must be positive");
}

FourierSpec FourierSpec::from_coeffs(const std::vector<std::pair<int, cplx>>& coeffs, int N,
                                     Source source) {
  FourierSpec s(N, source);
  for (const auto& [n, a] : coeffs) {
    if (n < -N || n > N) throw PreconditionError("FourierSpec: frequency outside |n| <= N");
    if (!finite(a)) throw PreconditionError("FourierSpec: non-finite amplitude");
    s.a_[static_cast<std::size_t>(n + N)] += a;
  }
  return s;
}

FourierSpec FourierSpec::from_dense(std::vector<cplx> dense, Source source) {
  if (dense.size() < 3 || dense.size() % 2 == 0)
    throw PreconditionError("FourierSpec: dense table must have odd length >= 3");
  for (const auto& a : dense)
    if (!finite(a)) throw PreconditionError("FourierSpec: non-finite amplitude");
  FourierSpec s(static_cast<int>(dense.size() / 2), source);
  s.a_ = std::move(dense);
  return s;
}

std::vector<std::pair<int, cplx>> FourierSpec::nonzeros() const {
  std::vector<std::pair<int, cplx>> out;
  for (int n = -N_; n <= N_; ++n) {
    cplx a = (*this)[n];
    if (a != cplx{}) out.emplace_back(n, a);
  }
  return out;
}

void SampleGrid::validate() const {
  const std::size_t m = M();
  if (m < 4 || !is_pow2(m)) throw PreconditionError("SampleGrid: M must be a power of two >= 4");
  for (const auto& v : values)
    if (!finite(v)) throw PreconditionError("SampleGrid: non-finite sample");
}

SampleGrid SampleGrid::sample(const std::function<cplx(double)>& u, std::size_t M) {
  SampleGrid g;
  g.values.resize(M);
  for (std::size_t j = 0; j < M; ++j)
    g.values[j] = u(2.0 * kPi * static_cast<double>(j) / static_cast<double>(M));
  return g;
}

void fft(std::vector<cplx>& x, bool inverse) {
  const std::size_t n = x.size();
  if (!is_pow2(n)) throw PreconditionError("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    // Twiddles computed directly rather than by recurrence to keep rounding at O(eps log n).
    std::vector<cplx> w(half);
    for (std::size_t k = 0; k < half; ++k) {
      const double ang = sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(len);
      w[k] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < half; ++k) {
        cplx a = x[i + k];
        cplx b = x[i + k + half] * w[k];
        x[i + k] = a + b;
        x[i + k + half] = a - b;
      }
  }
}

FourierSpec analyze_samples(const SampleGrid& grid) {
  grid.validate();
  const std::size_t M = grid.M();
  std::vector<cplx> x = grid.values;
  fft(x, false);
  const int N = static_cast<int>(M / 2) - 1;
  std::vector<cplx> dense(static_cast<std::size_t>(2 * N + 1));
  const double inv = 1.0 / static_cast<double>(M);
  for (int n = -N; n <= N; ++n) {
    std::size_t k = static_cast<std::size_t>((n + static_cast<int>(M)) % static_cast<int>(M));
    dense[static_cast<std::size_t>(n + N)] = x[k] * inv;
  }
  return FourierSpec::from_dense(std::move(dense), Source::sampled);
}

cplx synthesize(const FourierSpec& spec, double theta) {
  const int N = spec.N();
  cplx sum{};
  for (int n = -N; n <= N; ++n) {
    cplx a = spec[n];
    if (a == cplx{}) continue;
    sum += a * std::polar(1.0, static_cast<double>(n) * theta);
  }
  return sum;
}

std::vector<cplx> synthesize_grid(const FourierSpec& spec, std::size_t M) {
  const int N = spec.N();
  if (!is_pow2(M) || M <= static_cast<std::size_t>(2 * N))
    throw PreconditionError("synthesize_grid: M must be a power of two exceeding 2N");
  std::vector<cplx> x(M);
  for (int n = -N; n <= N; ++n) {
    std::size_t k = static_cast<std::size_t>((n + static_cast<long>(M)) % static_cast<long>(M));
    x[k] += spec[n];
  }
  fft(x, true);
  return x;
}

double seminorm_sup(const FourierSpec& spec, int l) {
  double best = 0.0;
  for (int n = -spec.N(); n <= spec.N(); ++n) {
    double w = (l == 0) ? 1.0 : std::pow(std::abs(static_cast<double>(n)), l);
    best = std::max(best, w * std::abs(spec[n]));
  }
  return best;
}

double seminorm_sum(const FourierSpec& spec, int l) {
  double sum = 0.0;
  for (int n = -spec.N(); n <= spec.N(); ++n) {
    double w = (l == 0) ? 1.0 : std::pow(std::abs(static_cast<double>(n)), l);
    sum += w * std::abs(spec[n]);
  }
  return sum;
}

std::string DecayProfile::label() const {
  if (rapid) return "rapid";
  if (inconclusive) return "inconclusive";
  return std::to_string(max_l);
}

DecayProfile decay_profile(const FourierSpec& spec) {
  const int N = spec.N();
  if (N < 32) throw PreconditionError("decay_profile: N must be at least 32");
  constexpr int kMaxL = 16;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int n = N / 4; n <= N; ++n) {
    double a = std::max(std::abs(spec[n]), std::abs(spec[-n]));
    if (a < kTiny) continue;
    double x = std::log(static_cast<double>(n)), y = std::log(a);
    sx += x, sy += y, sxx += x * x, sxy += x * y, ++cnt;
  }
  DecayProfile out;
  if (cnt == 0) {
    out.inconclusive = true;
    out.rapid = true;
    out.max_l = kMaxL;
    out.exponent = -std::numeric_limits<double>::infinity();
    return out;
  }
  double slope = 0.0;
  if (cnt == 1) {
    // One surviving tail entry: bound the exponent through the origin of the window.
    for (int n = N / 4; n <= N; ++n) {
      double a = std::max(std::abs(spec[n]), std::abs(spec[-n]));
      if (a >= kTiny) {
        slope = std::log(a) / std::log(static_cast<double>(n));
        break;
      }
    }
  } else {
    double den = cnt * sxx - sx * sx;
    slope = den > 0 ? (cnt * sxy - sx * sy) / den : 0.0;
  }
  out.exponent = slope;
  // sum |n|^l |a_n| converges iff l + p < -1.
  out.max_l = std::clamp(static_cast<int>(std::ceil(-slope - 1.0)) - 1, 0, kMaxL);
  if (slope < -static_cast<double>(kMaxL)) {
    if (spec.source() == Source::sampled)
      out.inconclusive = true;  // the grid never carries 4N samples
    else
      out.rapid = true;
  }
  return out;
}

FourierSpec rotate(const FourierSpec& spec, double alpha) {
  std::vector<cplx> d = spec.dense();
  const int N = spec.N();
  for (int n = -N; n <= N; ++n) d[static_cast<std::size_t>(n + N)] *= std::polar(1.0, -n * alpha);
  return FourierSpec::from_dense(std::move(d), spec.source());
}

FourierSpec negate_index(const FourierSpec& spec) {
  std::vector<cplx> d = spec.dense();
  std::reverse(d.begin(), d.end());
  return FourierSpec::from_dense(std::move(d), spec.source());
}

SpectralDerivatives spectral_derivatives(const FourierSpec& spec, double theta, int order) {
  SpectralDerivatives out;
  out.values.assign(static_cast<std::size_t>(order + 1), cplx{});
  out.noise.assign(static_cast<std::size_t>(order + 1), 0.0);
  const int N = spec.N();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Sampled tables carry DFT rounding of order eps * max|a| in every slot, zero or not.
  double floor = 0.0;
  if (spec.source() == Source::sampled)
    for (const auto& a : spec.dense()) floor = std::max(floor, std::abs(a));
  for (int m = -N; m <= N; ++m) {
    cplx a = spec[m];
    if (a == cplx{} && floor == 0.0) continue;
    cplx term = a * std::polar(1.0, m * theta);
    double mag = std::abs(a) + floor;
    const cplx im(0.0, static_cast<double>(m));
    for (int n = 0; n <= order; ++n) {
      out.values[static_cast<std::size_t>(n)] += term;
      out.noise[static_cast<std::size_t>(n)] += mag;
      term *= im;
      mag *= std::abs(static_cast<double>(m));
    }
  }
  for (int n = 0; n <= order; ++n)
    out.noise[static_cast<std::size_t>(n)] *= 8.0 * eps * (1.0 + n);
  return out;
}

}  // namespace sidext
