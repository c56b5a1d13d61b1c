#include "sidext/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unistd.h>

namespace sidext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_pow2(long v) { return v >= 4 && (v & (v - 1)) == 0; }

template <class T>
void read_opt(const ojson& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

const char* source_name(Source s) { return s == Source::sampled ? "sampled" : "exact"; }

}  // namespace

void RunConfig::validate() const {
  if (!is_pow2(N)) throw PreconditionError("config: N must be a power of two >= 4");
  if (n_max < 2) throw PreconditionError("config: n_max must be >= 2");
  for (double t : {tau, tau_ext, theta_ok, theta_jump})
    if (!(t > 0) || !std::isfinite(t)) throw PreconditionError("config: tolerances must be positive");
  if (!(theta_ok < theta_jump)) throw PreconditionError("config: need theta_ok < theta_jump");
  if (grid < 1 || radial < 1 || angular < 1) throw PreconditionError("config: grid sizes must be positive");
  if (glue_depth < 0 || glue_depth > 6) throw PreconditionError("config: glue_depth must lie in [0, 6]");
  if (quadrature_points < 16) throw PreconditionError("config: quadrature_points must be >= 16");
  if (N_probe < 4) throw PreconditionError("config: N_probe must be >= 4");
  if (format != "json" && format != "csv") throw PreconditionError("config: format must be json or csv");
}

ClassifyConfig RunConfig::classify() const {
  ClassifyConfig c;
  c.tau = tau;
  c.tau_ext = tau_ext;
  c.n_max = n_max;
  return c;
}

GlueConfig RunConfig::glue() const { return {quadrature_points, theta_ok, theta_jump}; }

ProbeConfig RunConfig::probe() const {
  ProbeConfig p;
  p.N_probe = N_probe;
  return p;
}

ojson RunConfig::to_json() const {
  ojson j;
  j["N"] = N;
  j["n_max"] = n_max;
  j["tau"] = tau;
  j["tau_ext"] = tau_ext;
  j["theta_ok"] = theta_ok;
  j["theta_jump"] = theta_jump;
  j["grid"] = grid;
  j["radial"] = radial;
  j["angular"] = angular;
  j["glue_depth"] = glue_depth;
  j["quadrature_points"] = quadrature_points;
  j["N_probe"] = N_probe;
  j["format"] = format;
  j["seed"] = seed;
  return j;
}

RunConfig RunConfig::from_json(const ojson& j) {
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  RunConfig c;
  try {
    read_opt(j, "N", c.N);
    read_opt(j, "n_max", c.n_max);
    read_opt(j, "tau", c.tau);
    read_opt(j, "tau_ext", c.tau_ext);
    read_opt(j, "theta_ok", c.theta_ok);
    read_opt(j, "theta_jump", c.theta_jump);
    read_opt(j, "grid", c.grid);
    read_opt(j, "radial", c.radial);
    read_opt(j, "angular", c.angular);
    read_opt(j, "glue_depth", c.glue_depth);
    read_opt(j, "quadrature_points", c.quadrature_points);
    read_opt(j, "N_probe", c.N_probe);
    read_opt(j, "format", c.format);
    read_opt(j, "seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

void put_radius(ojson& j, const std::string& key, double v) {
  j[key] = number(v);
  j[key + "_infinite"] = std::isinf(v) && v > 0;
}

ojson to_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

cplx complex_from_json(const ojson& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw InputError("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

ojson to_json(const FourierSpec& spec) {
  ojson j;
  j["N"] = spec.N();
  j["source"] = source_name(spec.source());
  ojson c = ojson::array();
  for (const auto& [n, a] : spec.nonzeros()) c.push_back({n, a.real(), a.imag()});
  j["coeffs"] = c;
  return j;
}

FourierSpec spec_from_json(const ojson& j) {
  try {
    if (!j.is_object()) throw InputError("spec: expected a JSON object");
    if (j.contains("samples")) {
      SampleGrid g;
      for (const auto& s : j.at("samples")) g.values.push_back(complex_from_json(s));
      g.validate();
      return analyze_samples(g);
    }
    if (!j.contains("coeffs")) throw InputError("spec: need \"coeffs\" or \"samples\"");
    std::vector<std::pair<int, cplx>> c;
    int max_n = 1;
    for (const auto& e : j.at("coeffs")) {
      if (!e.is_array() || e.size() != 3) throw InputError("spec: coefficient entries are [n, re, im]");
      const int n = e[0].get<int>();
      c.emplace_back(n, cplx(e[1].get<double>(), e[2].get<double>()));
      max_n = std::max(max_n, std::abs(n));
    }
    int N = max_n;
    read_opt(j, "N", N);
    Source src = Source::exact;
    if (j.contains("source")) {
      const auto s = j.at("source").get<std::string>();
      if (s == "sampled")
        src = Source::sampled;
      else if (s != "exact")
        throw InputError("spec: source must be exact or sampled");
    }
    return FourierSpec::from_coeffs(c, N, src);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("spec: ") + e.what());
  }
}

ojson to_json(const PowerSeries& s) {
  ojson j;
  j["center"] = to_json(s.center);
  j["scale"] = s.scale;
  j["domain_radius"] = s.domain_radius ? number(*s.domain_radius) : ojson(nullptr);
  ojson c = ojson::array();
  for (int k = 0; k <= s.K(); ++k) {
    const cplx a = s.coeffs[static_cast<std::size_t>(k)];
    if (a != cplx{}) c.push_back({k, a.real(), a.imag()});
  }
  j["K"] = s.K();
  j["coeffs"] = c;
  return j;
}

PowerSeries series_from_json(const ojson& j) {
  try {
    PowerSeries s;
    if (j.contains("center")) s.center = complex_from_json(j.at("center"));
    read_opt(j, "scale", s.scale);
    if (j.contains("domain_radius") && !j.at("domain_radius").is_null())
      s.domain_radius = j.at("domain_radius").get<double>();
    else if (!j.contains("domain_radius"))
      s.domain_radius = 1.0;
    int K = 0;
    for (const auto& e : j.at("coeffs")) K = std::max(K, e.at(0).get<int>());
    read_opt(j, "K", K);
    s.coeffs.assign(static_cast<std::size_t>(K) + 1, cplx{});
    for (const auto& e : j.at("coeffs")) {
      const int k = e.at(0).get<int>();
      if (k < 0 || k > K) throw InputError("series: coefficient index out of range");
      s.coeffs[static_cast<std::size_t>(k)] = {e.at(1).get<double>(), e.at(2).get<double>()};
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("series: ") + e.what());
  }
}

AnalyticCurve curve_from_json(const ojson& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "circle") return AnalyticCurve::circle();
    if (kind == "segment")
      return AnalyticCurve::segment(complex_from_json(j.at("gamma")), complex_from_json(j.at("delta")));
    if (kind == "jordan_annulus" || kind == "jordan") {
      std::vector<std::pair<int, cplx>> phi;
      for (const auto& e : j.at("phi")) phi.emplace_back(e.at(0).get<int>(), cplx(e.at(1).get<double>(), e.at(2).get<double>()));
      return AnalyticCurve::jordan_annulus(phi, j.at("r").get<double>(), j.at("R").get<double>());
    }
    if (kind == "chart") {
      const double radius = j.at("radius").get<double>();
      ojson sj;
      sj["coeffs"] = j.at("F");
      sj["domain_radius"] = radius;
      if (j.contains("center")) sj["center"] = j.at("center");
      PowerSeries F = series_from_json(sj);
      double a = F.center.real() - radius / 2, b = F.center.real() + radius / 2;
      read_opt(j, "a", a);
      read_opt(j, "b", b);
      return AnalyticCurve::local_chart(F, radius, a, b);
    }
    throw InputError("curve: unknown kind " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("curve: ") + e.what());
  }
}

ojson to_json(const AnalyticCurve& c) {
  ojson j;
  j["kind"] = to_string(c.kind());
  switch (c.kind()) {
    case CurveKind::segment:
      j["gamma"] = to_json(c.mobius().gamma);
      j["delta"] = to_json(c.mobius().delta);
      break;
    case CurveKind::jordan_annulus: {
      ojson phi = ojson::array();
      for (const auto& [n, a] : c.phi()) phi.push_back({n, a.real(), a.imag()});
      j["phi"] = phi;
      j["r"] = c.inner_radius();
      j["R"] = c.outer_radius();
      break;
    }
    case CurveKind::local_chart: {
      const ojson s = to_json(c.chart());
      j["F"] = s["coeffs"];
      j["center"] = s["center"];
      j["radius"] = c.chart_radius();
      j["a"] = c.chart_lo();
      j["b"] = c.chart_hi();
      break;
    }
    default: break;
  }
  return j;
}

CurveGraph graph_from_json(const ojson& j) {
  try {
    if (j.contains("xs")) {
      CurveGraph g{j.at("xs").get<std::vector<double>>(), j.at("ys").get<std::vector<double>>()};
      g.validate();
      return g;
    }
    return CurveGraph::segment(complex_from_json(j.at("a")), complex_from_json(j.at("b")));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("graph: ") + e.what());
  }
}

JetData jet_from_json(const ojson& j) {
  try {
    JetData d;
    d.point = j.at("point").get<double>();
    for (const auto& v : j.at("derivs")) d.derivs.push_back(complex_from_json(v));
    if (d.derivs.empty()) throw InputError("jet: empty derivative list");
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("jet: ") + e.what());
  }
}

ojson to_json(const BridgeFunction& b, int plot_points) {
  ojson j;
  j["s"] = b.s;
  j["t"] = b.t;
  j["K"] = b.K;
  ojson poly = ojson::array();
  for (cplx c : b.polynomial) poly.push_back(to_json(c));
  j["polynomial"] = poly;
  ojson terms = ojson::array();
  for (const auto& t : b.terms) {
    ojson e;
    e["side"] = t.side == 0 ? "left" : "right";
    e["order"] = t.order;
    e["coefficient"] = to_json(t.coefficient);
    e["eps"] = t.eps;
    terms.push_back(e);
  }
  j["terms"] = terms;
  j["sup_bound"] = number(b.sup_bound());
  j["plateau"] = number(b.plateau());
  ojson samples = ojson::array();
  for (int i = 0; i < plot_points; ++i) {
    const double x = b.s + (b.t - b.s) * i / std::max(1, plot_points - 1);
    const cplxl v = b.eval(x);
    samples.push_back({x, static_cast<double>(v.real()), static_cast<double>(v.imag())});
  }
  j["samples"] = samples;
  return j;
}

ojson to_json(const PointMargin& p) {
  ojson j;
  j["n"] = p.n;
  j["z"] = to_json(p.z);
  j["distance"] = p.distance;
  put_radius(j, "radius", p.radius);
  j["margin"] = number(p.margin);
  j["span"] = number(p.span);
  j["order"] = p.order;
  return j;
}

ojson to_json(const SideVerdict& v) {
  ojson j;
  j["z0"] = to_json(v.z0);
  double th = std::arg(v.z0);
  j["theta"] = th < 0 ? th + 2 * kPi : th;
  j["outside"] = to_string(v.outside);
  j["inside"] = to_string(v.inside);
  j["disk"] = to_string(v.disk);
  j["one_sided_outside"] = v.in_U2();
  j["one_sided_inside"] = v.in_U3();
  j["both_sides"] = v.in_U4();
  j["disk_non_extendable"] = v.in_U5();
  ojson om = ojson::array(), im = ojson::array();
  for (const auto& p : v.outside_margins) om.push_back(to_json(p));
  for (const auto& p : v.inside_margins) im.push_back(to_json(p));
  j["outside_margins"] = om;
  j["inside_margins"] = im;
  return j;
}

ojson to_json(const TransferVerdict& v) {
  ojson j;
  j["t0"] = v.t0;
  j["curve_point"] = to_json(v.curve_point);
  j["inside_label"] = v.inside_label;
  j["outside_label"] = v.outside_label;
  j["verdict"] = to_json(v.verdict);
  return j;
}

ojson to_json(const GlueReport& r) {
  ojson j;
  j["verdict"] = to_string(r.verdict);
  j["max_residual"] = r.max_residual;
  j["depth"] = r.depth;
  j["quadrature_points"] = r.quadrature_points;
  j["theta_ok"] = r.theta_ok;
  j["theta_jump"] = r.theta_jump;
  ojson sq = ojson::array();
  for (const auto& q : r.squares) {
    ojson e;
    e["center"] = to_json(q.center);
    e["side"] = q.side;
    e["residual"] = q.residual;
    e["crosses_curve"] = q.crosses_curve;
    sq.push_back(e);
  }
  j["squares"] = sq;
  return j;
}

ojson to_json(const AnalyticityProbe& p) {
  ojson j;
  j["t0"] = p.t0;
  j["verdict"] = to_string(p.verdict);
  j["orders_tested"] = p.orders_tested;
  j["k_star"] = p.k_star ? ojson(*p.k_star) : ojson("none");
  j["growth"] = number(p.growth);
  j["growth_infinite"] = std::isinf(p.growth);
  j["magnitudes"] = p.magnitudes;
  ojson nb = ojson::array();
  for (const auto& c : p.neighbors) {
    ojson e;
    e["t"] = c.t;
    e["max_root"] = c.max_root;
    e["bound"] = c.bound;
    e["ok"] = c.ok;
    nb.push_back(e);
  }
  j["neighbors"] = nb;
  return j;
}

ojson to_json(const RadiusSample& r) {
  ojson j;
  j["zeta"] = to_json(r.zeta);
  put_radius(j, "radius", r.radius);
  j["grid_distance"] = r.grid_distance;
  return j;
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header_verdicts() { return "index,theta,re,im,outside,inside,disk\n"; }

std::string csv_row(std::size_t index, double theta, const SideVerdict& v) {
  std::ostringstream os;
  os << index << ',' << csv_number(theta) << ',' << csv_number(v.z0.real()) << ','
     << csv_number(v.z0.imag()) << ',' << to_string(v.outside) << ',' << to_string(v.inside) << ','
     << to_string(v.disk) << '\n';
  return os.str();
}

ojson read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open " + p.string());
  try {
    return ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(p.string() + ": " + e.what());
  }
}

void write_atomic(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::path tmp = p;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, p);
}

ojson report_header(const std::string& command, const RunConfig& cfg) {
  ojson j;
  j["tool"] = "sidext";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = cfg.to_json();
  return j;
}

FourierSpec builtin_spec(const std::string& id, int N, std::uint64_t seed) {
  if (id == "lacunary" || id == "conjugate-lacunary") {
    std::vector<std::pair<int, cplx>> c;
    for (int n = 0; n <= 8 && (1 << n) <= N; ++n) c.emplace_back(1 << n, std::exp2(-double(n) * n));
    FourierSpec s = FourierSpec::from_coeffs(c, std::min(N, 256));
    return id == "lacunary" ? s : negate_index(s);
  }
  if (id == "rational") {
    // 1/(e^{i theta} - 2) = -sum_{n>=0} 2^{-n-1} e^{i n theta}, cut before underflow.
    const int Nr = std::min(N, 512);
    std::vector<std::pair<int, cplx>> c;
    for (int n = 0; n <= Nr; ++n) c.emplace_back(n, -std::exp2(-n - 1.0));
    return FourierSpec::from_coeffs(c, Nr);
  }
  if (id == "trig") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int deg = std::min(N, 64);
    std::vector<std::pair<int, cplx>> c;
    for (int n = -deg; n <= deg; ++n) c.emplace_back(n, std::polar(unit(rng), 2 * kPi * unit(rng)));
    return FourierSpec::from_coeffs(c, N);
  }
  if (id == "bump") {
    const std::size_t M = static_cast<std::size_t>(2 * N);
    return analyze_samples(SampleGrid::sample(
        [](double t) {
          const double s = std::sin(t / 2);
          return s == 0.0 ? cplx{} : cplx(std::exp(-1.0 / (s * s)));
        },
        M));
  }
  throw InputError("unknown expression id: " + id);
}

ComplexFn builtin_plane_fn(const std::string& id, double param) {
  if (id == "rational") {
    const double p = param == 0.0 ? 2.0 : param;
    return [p](cplx z) { return 1.0 / (z - p); };
  }
  if (id == "conj") return [](cplx z) { return std::conj(z); };
  if (id == "piecewise-jump") {
    const double h = param == 0.0 ? 0.01 : param;
    return [h](cplx z) { return z.imag() > 0 ? cplx(h) : cplx{}; };
  }
  if (id == "lacunary" || id == "conjugate-lacunary") {
    const bool conj_index = id == "conjugate-lacunary";
    return [conj_index](cplx z) {
      cplx w = z / std::abs(z);
      if (conj_index) w = std::conj(w);
      cplx s{};
      for (int n = 0; n <= 8; ++n) s += std::exp2(-double(n) * n) * std::pow(w, 1 << n);
      return s;
    };
  }
  if (id == "zero") return [](cplx) { return cplx{}; };
  throw InputError("unknown expression id: " + id);
}

DerivativeSource builtin_source(const std::string& id, int N, std::uint64_t seed) {
  if (id == "cos") return jet_source([](const Jet<long double>& x) { return cos(x); });
  if (id == "bump") return flat_bump_source();
  return spectral_source(builtin_spec(id, N, seed));
}

}  // namespace sidext
