#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sidext {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr const char* kVersion = "0.3.1";

/// Raised when an argument violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Source { exact, sampled };

/// Two-sided coefficient table a_n, |n| <= N, of a function on the unit circle.
///
/// Storage is dense; index n lives at slot n + N. Instances are immutable
/// once built.
class FourierSpec {
 public:
  FourierSpec() : FourierSpec(1) {}
  explicit FourierSpec(int N, Source source = Source::exact);

  /// Builds from a sparse list. Entries with |n| > N are rejected.
  static FourierSpec from_coeffs(const std::vector<std::pair<int, cplx>>& coeffs, int N,
                                 Source source = Source::exact);
  /// Builds from a dense vector of length 2N+1.
  static FourierSpec from_dense(std::vector<cplx> dense, Source source = Source::exact);

  int N() const { return N_; }
  Source source() const { return source_; }

  /// a_n, or zero outside the stored range.
  cplx operator[](int n) const {
    return (n < -N_ || n > N_) ? cplx{} : a_[static_cast<std::size_t>(n + N_)];
  }
  const std::vector<cplx>& dense() const { return a_; }

  /// Nonzero entries in increasing n.
  std::vector<std::pair<int, cplx>> nonzeros() const;

  bool operator==(const FourierSpec& o) const {
    return N_ == o.N_ && source_ == o.source_ && a_ == o.a_;
  }

 private:
  int N_;
  Source source_;
  std::vector<cplx> a_;
};

struct SampleGrid {
  std::vector<cplx> values;

  std::size_t M() const { return values.size(); }
  /// Throws PreconditionError unless M >= 4 is a power of two and all samples are finite.
  void validate() const;

  /// Samples u at theta_j = 2*pi*j/M.
  static SampleGrid sample(const std::function<cplx(double)>& u, std::size_t M);
};

/// In-place radix-2 FFT. Forward uses exp(-2 pi i jk/M); inverse is unnormalized.
void fft(std::vector<cplx>& x, bool inverse);

FourierSpec analyze_samples(const SampleGrid& grid);

cplx synthesize(const FourierSpec& spec, double theta);

/// Values at theta_j = 2*pi*j/M. Requires M a power of two with M > 2N.
std::vector<cplx> synthesize_grid(const FourierSpec& spec, std::size_t M);

double seminorm_sup(const FourierSpec& spec, int l);
double seminorm_sum(const FourierSpec& spec, int l);

struct DecayProfile {
  bool rapid = false;
  bool inconclusive = false;  ///< tail identically zero, or not decidable from samples
  int max_l = 0;              ///< largest l with a finite seminorm_sum estimate
  double exponent = 0.0;      ///< fitted p in |a_n| ~ |n|^p
  std::string label() const;
};

/// Log-log fit of the stored tail n in [N/4, N]. Requires N >= 32.
DecayProfile decay_profile(const FourierSpec& spec);

/// u(theta - alpha): a_n -> a_n exp(-i n alpha).
FourierSpec rotate(const FourierSpec& spec, double alpha);

/// u(-theta): a_n -> a_{-n}.
FourierSpec negate_index(const FourierSpec& spec);

/// d^n u / d theta^n at theta for n = 0..order, with per-order rounding noise bounds.
struct SpectralDerivatives {
  std::vector<cplx> values;
  std::vector<double> noise;
};
SpectralDerivatives spectral_derivatives(const FourierSpec& spec, double theta, int order);

}  // namespace sidext
