#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sidext/borel.hpp"
#include "sidext/cauchy_split.hpp"
#include "sidext/curve.hpp"
#include "sidext/extend_class.hpp"
#include "sidext/fourier.hpp"
#include "sidext/morera.hpp"
#include "sidext/power_series.hpp"
#include "sidext/probe.hpp"

namespace sidext {

using ojson = nlohmann::ordered_json;

/// Thrown for unreadable or ill-formed input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int N = 4096;                 ///< truncation, power of two
  int n_max = 10;
  double tau = 0.05;
  double tau_ext = 0.2;
  double theta_ok = 1e-7;
  double theta_jump = 1e-4;
  int grid = 16;                ///< classification points on the circle
  int radial = 8;               ///< radius-map rings
  int angular = 32;             ///< radius-map rays
  int glue_depth = 4;
  int quadrature_points = 64;
  int N_probe = 24;
  std::string format = "json";
  std::uint64_t seed = 0;

  void validate() const;
  ClassifyConfig classify() const;
  GlueConfig glue() const;
  ProbeConfig probe() const;

  ojson to_json() const;
  static RunConfig from_json(const ojson& j);  ///< missing keys keep their defaults
};

/// JSON number, or null for non-finite values.
ojson number(double v);
/// Writes key (null when infinite) and key_infinite.
void put_radius(ojson& j, const std::string& key, double v);
ojson to_json(cplx z);
cplx complex_from_json(const ojson& j);

ojson to_json(const FourierSpec& spec);
/// {"coeffs": [[n, re, im], ...], "N": int} or {"samples": [[re, im], ...]}.
FourierSpec spec_from_json(const ojson& j);

ojson to_json(const PowerSeries& s);
PowerSeries series_from_json(const ojson& j);

/// {"kind": "circle"} | {"kind": "jordan_annulus", "phi", "r", "R"} |
/// {"kind": "segment", "gamma", "delta"} | {"kind": "chart", "F", "radius", "a"?, "b"?}.
AnalyticCurve curve_from_json(const ojson& j);
ojson to_json(const AnalyticCurve& c);

/// {"xs": [...], "ys": [...]} or {"a": [re, im], "b": [re, im]}.
CurveGraph graph_from_json(const ojson& j);

JetData jet_from_json(const ojson& j);
ojson to_json(const BridgeFunction& b, int plot_points = 65);

ojson to_json(const PointMargin& p);
ojson to_json(const SideVerdict& v);
ojson to_json(const TransferVerdict& v);
ojson to_json(const GlueReport& r);
ojson to_json(const AnalyticityProbe& p);
ojson to_json(const RadiusSample& r);

std::string csv_header_verdicts();
std::string csv_row(std::size_t index, double theta, const SideVerdict& v);
/// "inf" for infinite values, 17 significant digits otherwise.
std::string csv_number(double v);

ojson read_json_file(const std::filesystem::path& p);
/// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::filesystem::path& p, const std::string& content);

/// Report envelope: tool, version, command, config.
ojson report_header(const std::string& command, const RunConfig& cfg);

/// Coefficient tables for the built-in oracle ids: rational, lacunary, conjugate-lacunary,
/// trig (random trig polynomial seeded by `seed`), bump (sampled flat bump).
FourierSpec builtin_spec(const std::string& id, int N, std::uint64_t seed = 0);
/// Plane functions for glue and transfer: rational, conj, piecewise-jump, lacunary, zero.
ComplexFn builtin_plane_fn(const std::string& id, double param = 0.0);
/// Derivative sources for the probe: cos, bump, or any builtin_spec id.
DerivativeSource builtin_source(const std::string& id, int N, std::uint64_t seed = 0);

}  // namespace sidext
