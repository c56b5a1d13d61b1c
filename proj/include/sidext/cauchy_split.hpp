#pragma once

#include "sidext/fourier.hpp"
#include "sidext/power_series.hpp"

namespace sidext {

enum class SplitMode { plain, conjugated };

// f carries a_n for n >= 0 against z^n. g is a series in 1/z with zero constant
// term: g.coeffs[k] multiplies z^-k in plain mode; in conjugated mode it holds
// conj(a_-k) against z^k.
struct SplitPair {
  PowerSeries f;
  PowerSeries g;
  SplitMode mode = SplitMode::plain;
  int N = 1;
  Source source = Source::exact;

  bool operator==(const SplitPair& o) const {
    return mode == o.mode && N == o.N && source == o.source && f.coeffs == o.f.coeffs &&
           g.coeffs == o.g.coeffs;
  }
};

SplitPair split(const FourierSpec& spec, SplitMode mode = SplitMode::plain);
FourierSpec reconstruct(const SplitPair& pair);

/// Trapezoid rule for (1/2 pi i) \oint u(w)/(w - z) dw with M nodes.
cplx cauchy_eval_inside(const FourierSpec& spec, cplx z, int quadrature_points);

/// Sum over k >= 1 of g.coeffs[k] z^-k, for |z| >= 1.01.
cplx eval_exterior(const PowerSeries& g, cplx z);

/// Boundary value f(e^{i theta}) + g(e^{i theta}) (or its conjugated counterpart).
cplx eval_boundary(const SplitPair& pair, double theta);

/// g(1/z) as a series on the unit disk: coefficients a_-n against z^n, n >= 1.
PowerSeries invert_exterior(const FourierSpec& spec);

}  // namespace sidext
