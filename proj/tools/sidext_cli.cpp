// sidext: one-sided extendability toolkit, command-line front end.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sidext/io.hpp"

using namespace sidext;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string config_path;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
};

RunConfig load_config(const Globals& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) cfg = RunConfig::from_json(read_json_file(g.config_path));
  if (!g.format.empty()) cfg.format = g.format;
  if (g.seed) cfg.seed = *g.seed;
  cfg.validate();
  return cfg;
}

void emit(const Globals& g, const std::string& content) {
  if (g.out.empty())
    std::cout << content;
  else
    write_atomic(g.out, content);
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

FourierSpec load_spec(const std::string& in, const std::string& expr, const RunConfig& cfg) {
  if (!in.empty() == !expr.empty()) throw InputError("give exactly one of --in and --expr");
  if (!in.empty()) return spec_from_json(read_json_file(in));
  return builtin_spec(expr, cfg.N, cfg.seed);
}

ojson describe_input(const std::string& in, const std::string& expr) {
  ojson j;
  if (!in.empty())
    j["file"] = in;
  else
    j["expr"] = expr;
  return j;
}

// Laurent polynomial sum a_n w^n from a spec file, used as a function on a curve.
CurveFn laurent_fn(const FourierSpec& s) {
  return [nz = s.nonzeros()](cplx w) {
    cplx acc{};
    for (const auto& [n, a] : nz) acc += a * std::pow(w, n);
    return acc;
  };
}

int cmd_split(const Globals& g, const std::string& in, const std::string& expr, const std::string& mode) {
  const RunConfig cfg = load_config(g);
  const FourierSpec spec = load_spec(in, expr, cfg);
  if (mode != "plain" && mode != "conjugated") throw InputError("--mode must be plain or conjugated");
  const SplitPair pair = split(spec, mode == "plain" ? SplitMode::plain : SplitMode::conjugated);
  if (!(reconstruct(pair) == spec)) throw InvariantError("split: reconstruction does not reproduce the input");
  ojson f = report_header("split", cfg), gj = report_header("split", cfg);
  f["part"] = "f";
  f["mode"] = mode;
  f["series"] = to_json(pair.f);
  gj["part"] = "g";
  gj["mode"] = mode;
  gj["series"] = to_json(pair.g);
  if (g.out.empty()) {
    ojson both = report_header("split", cfg);
    both["f"] = f["series"];
    both["g"] = gj["series"];
    std::cout << dump(both);
    return 0;
  }
  std::filesystem::create_directories(g.out);
  write_atomic(std::filesystem::path(g.out) / "f.json", dump(f));
  write_atomic(std::filesystem::path(g.out) / "g.json", dump(gj));
  return 0;
}

int cmd_classify(const Globals& g, const std::string& in, const std::string& expr, int grid) {
  RunConfig cfg = load_config(g);
  if (grid > 0) cfg.grid = grid;
  const FourierSpec spec = load_spec(in, expr, cfg);
  const auto verdicts = classify_grid(spec, cfg.grid, cfg.classify());
  if (cfg.format == "csv") {
    std::string s = csv_header_verdicts();
    for (std::size_t i = 0; i < verdicts.size(); ++i)
      s += csv_row(i, 2 * kPi * static_cast<double>(i) / cfg.grid, verdicts[i]);
    emit(g, s);
    return 0;
  }
  ojson rep = report_header("classify", cfg);
  rep["input"] = describe_input(in, expr);
  ojson arr = ojson::array();
  for (const auto& v : verdicts) arr.push_back(to_json(v));
  rep["verdicts"] = arr;
  emit(g, dump(rep));
  return 0;
}

int cmd_radius_map(const Globals& g, const std::string& in, const std::string& expr, int radial, int angular) {
  RunConfig cfg = load_config(g);
  if (radial > 0) cfg.radial = radial;
  if (angular > 0) cfg.angular = angular;
  const FourierSpec spec = load_spec(in, expr, cfg);
  const auto rows = radius_map(spec, cfg.radial, cfg.angular, cfg.grid, cfg.classify());
  // Plot data defaults to CSV; an explicit --format json switches.
  if (g.format != "json") {
    std::string s = "zeta_re,zeta_im,R,grid_distance\n";
    for (const auto& r : rows)
      s += csv_number(r.zeta.real()) + "," + csv_number(r.zeta.imag()) + "," + csv_number(r.radius) + "," +
           csv_number(r.grid_distance) + "\n";
    emit(g, s);
    return 0;
  }
  ojson rep = report_header("radius-map", cfg);
  rep["input"] = describe_input(in, expr);
  ojson arr = ojson::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  rep["samples"] = arr;
  emit(g, dump(rep));
  return 0;
}

int cmd_glue(const Globals& g, const std::string& expr, double param, const std::string& curve,
             const std::vector<double>& center, double side, int depth) {
  RunConfig cfg = load_config(g);
  if (depth >= 0) cfg.glue_depth = depth;
  cfg.validate();
  if (center.size() != 2) throw InputError("--center takes two numbers");
  const cplx c(center[0], center[1]);
  const CurveGraph L = curve.empty() ? CurveGraph::horizontal(c.imag(), c.real() - side, c.real() + side)
                                     : graph_from_json(read_json_file(curve));
  const GlueReport r = glue_check(builtin_plane_fn(expr, param), L, c, side, cfg.glue_depth, cfg.glue());
  ojson rep = report_header("glue", cfg);
  rep["input"] = {{"expr", expr}, {"param", param}, {"center", to_json(c)}, {"side", side}};
  rep["report"] = to_json(r);
  emit(g, dump(rep));
  return 0;
}

int cmd_bridge(const Globals& g, const std::string& jets, int K) {
  const RunConfig cfg = load_config(g);
  const ojson j = read_json_file(jets);
  if (!j.contains("left") || !j.contains("right")) throw InputError("jets file needs left and right");
  const JetData left = jet_from_json(j["left"]), right = jet_from_json(j["right"]);
  if (K < 0) K = std::min(left.K(), right.K());
  const BridgeFunction b = jet_bridge(left, right, K);
  ojson rep = report_header("bridge", cfg);
  rep["bridge"] = to_json(b);
  emit(g, dump(rep));
  return 0;
}

int cmd_transfer(const Globals& g, const std::string& curve_path, const std::string& in, const std::string& expr,
                 double param, int grid) {
  RunConfig cfg = load_config(g);
  if (grid > 0) cfg.grid = grid;
  const AnalyticCurve curve = curve_from_json(read_json_file(curve_path));
  if (!in.empty() == !expr.empty()) throw InputError("give exactly one of --in and --expr");
  const CurveFn u = in.empty() ? CurveFn(builtin_plane_fn(expr, param))
                               : laurent_fn(spec_from_json(read_json_file(in)));
  PullbackOptions opt;
  opt.M = static_cast<std::size_t>(2 * cfg.N);
  std::vector<TransferVerdict> out;
  for (int j = 0; j < cfg.grid; ++j) {
    const double t = curve.periodic() ? 2 * kPi * j / cfg.grid : (kPi / 2) * (j + 0.5) / cfg.grid;
    out.push_back(transfer_classification(u, curve, t, cfg.classify(), opt));
  }
  if (cfg.format == "csv") {
    std::string s = "index,t0,point_re,point_im,outside,inside,disk,inside_label,outside_label\n";
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& v = out[i];
      s += std::to_string(i) + "," + csv_number(v.t0) + "," + csv_number(v.curve_point.real()) + "," +
           csv_number(v.curve_point.imag()) + "," + to_string(v.verdict.outside) + "," +
           to_string(v.verdict.inside) + "," + to_string(v.verdict.disk) + "," + v.inside_label + "," +
           v.outside_label + "\n";
    }
    emit(g, s);
    return 0;
  }
  ojson rep = report_header("transfer", cfg);
  rep["curve"] = to_json(curve);
  rep["input"] = describe_input(in, expr);
  ojson arr = ojson::array();
  for (const auto& v : out) arr.push_back(to_json(v));
  rep["verdicts"] = arr;
  emit(g, dump(rep));
  return 0;
}

int cmd_sample(const Globals& g, CandidateProfile prof, const std::string& tail, const std::string& side, bool pure) {
  const RunConfig cfg = load_config(g);
  if (pure) {
    const int N = prof.N;
    prof = CandidateProfile::pure_lacunary(N);
  } else {
    if (tail == "lacunary")
      prof.tail = TailKind::lacunary;
    else if (tail == "power")
      prof.tail = TailKind::power;
    else
      throw InputError("--tail must be lacunary or power");
  }
  if (side == "outside")
    prof.side = TailSide::outside;
  else if (side == "inside")
    prof.side = TailSide::inside;
  else if (side == "both")
    prof.side = TailSide::both;
  else
    throw InputError("--side must be outside, inside or both");
  const FourierSpec s = sample_candidate(cfg.seed, prof);
  ojson rep = to_json(s);
  rep["generator"] = {{"seed", cfg.seed}, {"tail", pure ? "lacunary" : tail}, {"side", side},
                      {"decay", prof.decay}, {"gap_base", prof.gap_base},
                      {"background_degree", prof.background_degree}, {"version", kVersion}};
  emit(g, dump(rep));
  return 0;
}

int cmd_probe(const Globals& g, const std::string& in, const std::string& expr, std::vector<double> t0s, int grid) {
  RunConfig cfg = load_config(g);
  if (!in.empty() == !expr.empty()) throw InputError("give exactly one of --in and --expr");
  const DerivativeSource src =
      in.empty() ? builtin_source(expr, cfg.N, cfg.seed) : spectral_source(spec_from_json(read_json_file(in)));
  if (t0s.empty()) {
    const int G = grid > 0 ? grid : cfg.grid;
    for (int j = 0; j < G; ++j) t0s.push_back(2 * kPi * j / G);
  }
  std::vector<AnalyticityProbe> out;
  for (double t : t0s) out.push_back(analyticity_probe(src, t, cfg.probe()));
  if (cfg.format == "csv") {
    std::string s = "t0,verdict,k_star,orders_tested,growth\n";
    for (const auto& p : out)
      s += csv_number(p.t0) + "," + to_string(p.verdict) + "," + (p.k_star ? csv_number(*p.k_star) : "none") +
           "," + std::to_string(p.orders_tested) + "," + csv_number(p.growth) + "\n";
    emit(g, s);
    return 0;
  }
  ojson rep = report_header("probe", cfg);
  rep["input"] = describe_input(in, expr);
  ojson arr = ojson::array();
  for (const auto& p : out) arr.push_back(to_json(p));
  rep["probes"] = arr;
  emit(g, dump(rep));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sidext: one-sided extendability of boundary functions"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "RunConfig JSON file");
  app.add_option("--out", g.out, "output file (directory for split); stdout when absent");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "random seed");

  std::string in, expr, mode = "plain", curve, tail = "lacunary", side = "outside", jets;
  int grid = 0, radial = 0, angular = 0, depth = -1, K = -1;
  double param = 0.0, side_len = 1.0;
  std::vector<double> center{0.0, 0.0}, t0s;
  bool pure = false;
  CandidateProfile prof;

  auto* split_cmd = app.add_subcommand("split", "split a boundary function into f and g");
  split_cmd->add_option("--in", in, "function spec JSON");
  split_cmd->add_option("--expr", expr, "built-in expression id");
  split_cmd->add_option("--mode", mode, "plain or conjugated");

  auto* classify_cmd = app.add_subcommand("classify", "one-sided classification on a circle grid");
  classify_cmd->add_option("--in", in, "function spec JSON");
  classify_cmd->add_option("--expr", expr, "built-in expression id");
  classify_cmd->add_option("--grid", grid, "grid size");

  auto* radius_cmd = app.add_subcommand("radius-map", "radius estimates on a polar grid (plot data)");
  radius_cmd->add_option("--in", in, "function spec JSON");
  radius_cmd->add_option("--expr", expr, "built-in expression id");
  radius_cmd->add_option("--radial", radial, "rings");
  radius_cmd->add_option("--angular", angular, "rays");

  auto* glue_cmd = app.add_subcommand("glue", "Morera residuals over a window");
  glue_cmd->add_option("--expr", expr, "rational, conj, piecewise-jump, lacunary, zero")->required();
  glue_cmd->add_option("--param", param, "expression parameter (pole, jump height)");
  glue_cmd->add_option("--curve", curve, "curve graph JSON; horizontal through the center when absent");
  glue_cmd->add_option("--center", center, "window center re im")->expected(2);
  glue_cmd->add_option("--side", side_len, "window side");
  glue_cmd->add_option("--depth", depth, "subdivision depth 0..6");

  auto* bridge_cmd = app.add_subcommand("bridge", "Borel bridge between two jets");
  bridge_cmd->add_option("--jets", jets, "JSON with left and right jets")->required();
  bridge_cmd->add_option("--K", K, "order; defaults to the shorter jet");

  auto* transfer_cmd = app.add_subcommand("transfer", "classification through a curve map");
  transfer_cmd->add_option("--curve", curve, "curve JSON")->required();
  transfer_cmd->add_option("--in", in, "Laurent coefficients of u(w) as a function spec");
  transfer_cmd->add_option("--expr", expr, "built-in plane function id");
  transfer_cmd->add_option("--param", param, "expression parameter");
  transfer_cmd->add_option("--grid", grid, "parameter grid size");

  auto* sample_cmd = app.add_subcommand("sample", "draw a generator candidate");
  sample_cmd->add_option("--tail", tail, "lacunary or power");
  sample_cmd->add_option("--side", side, "outside, inside or both");
  sample_cmd->add_option("--N", prof.N, "truncation");
  sample_cmd->add_option("--decay", prof.decay, "tail decay");
  sample_cmd->add_option("--gap-base", prof.gap_base, "lacunary gap base");
  sample_cmd->add_option("--bg-degree", prof.background_degree, "background degree");
  sample_cmd->add_flag("--pure", pure, "pure lacunary profile");

  auto* probe_cmd = app.add_subcommand("probe", "factorial-growth analyticity probe");
  probe_cmd->add_option("--in", in, "function spec JSON");
  probe_cmd->add_option("--expr", expr, "cos, bump or a built-in spec id");
  probe_cmd->add_option("--t0", t0s, "parameter points");
  probe_cmd->add_option("--grid", grid, "uniform points when --t0 is absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*split_cmd) return cmd_split(g, in, expr, mode);
    if (*classify_cmd) return cmd_classify(g, in, expr, grid);
    if (*radius_cmd) return cmd_radius_map(g, in, expr, radial, angular);
    if (*glue_cmd) return cmd_glue(g, expr, param, curve, center, side_len, depth);
    if (*bridge_cmd) return cmd_bridge(g, jets, K);
    if (*transfer_cmd) return cmd_transfer(g, curve, in, expr, param, grid);
    if (*sample_cmd) return cmd_sample(g, prof, tail, side, pure);
    if (*probe_cmd) return cmd_probe(g, in, expr, t0s, grid);
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_FAILURE;
}
