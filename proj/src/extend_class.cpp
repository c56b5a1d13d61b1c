#include "sidext/extend_class.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "sidext/cauchy_split.hpp"

namespace sidext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int last_significant(const PowerSeries& s) {
  for (int k = s.K(); k >= 0; --k) {
    double a = std::abs(s.coeffs[static_cast<std::size_t>(k)]);
    if (a > 1e-300 && a > 4.0 * s.noise_at(k)) return k;
  }
  return -1;
}

// Sampled tables carry DFT rounding in every slot.
void attach_sampling_noise(const FourierSpec& u, PowerSeries& s) {
  if (u.source() != Source::sampled) return;
  double amax = 0.0;
  for (const auto& a : u.dense()) amax = std::max(amax, std::abs(a));
  const double lg = std::log2(2.0 * (u.N() + 1));
  s.noise.assign(s.coeffs.size(), 16.0 * std::numeric_limits<double>::epsilon() * amax * lg);
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::extendable: return "extendable";
    case Status::non_extendable: return "non_extendable";
    default: return "inconclusive";
  }
}

Status status_from_string(const std::string& s) {
  if (s == "extendable") return Status::extendable;
  if (s == "non_extendable") return Status::non_extendable;
  if (s == "inconclusive") return Status::inconclusive;
  throw PreconditionError("unknown status: " + s);
}

TestSchedule TestSchedule::radial(cplx z0, int n_max) {
  TestSchedule t;
  t.z0 = z0;
  t.n_max = n_max;
  for (int n = 2; n <= n_max; ++n) t.points.push_back((1.0 - std::ldexp(1.0, -n)) * z0);
  return t;
}

TestSchedule TestSchedule::tangential(cplx z0, int n_max, double angle) {
  TestSchedule t;
  t.z0 = z0;
  t.n_max = n_max;
  for (int n = 2; n <= n_max; ++n)
    t.points.push_back(z0 * (1.0 - std::ldexp(1.0, -n) * std::polar(1.0, angle)));
  return t;
}

U1Result test_U1(const PowerSeries& f, const TestSchedule& schedule, const ClassifyConfig& cfg) {
  f.validate();
  if (!f.domain_radius || *f.domain_radius < 1.0 - 1e-12)
    throw PreconditionError("test_U1: series must converge on the unit disk");
  const double D = *f.domain_radius;
  U1Result res;

  const RadiusEstimate r0 = radius(f);
  const int k_last = last_significant(f);
  if (std::isinf(r0.value) || k_last <= f.K() / 4) {
    // Numerically a polynomial: entire.
    for (std::size_t i = 0; i < schedule.points.size(); ++i) {
      PointMargin p;
      p.n = static_cast<int>(i) + 2;
      p.z = schedule.points[i];
      p.distance = std::abs(p.z - schedule.z0);
      p.radius = p.margin = kInf;
      p.order = f.K();
      res.points.push_back(p);
    }
    res.status = Status::extendable;
    return res;
  }

  for (std::size_t i = 0; i < schedule.points.size(); ++i) {
    const cplx z = schedule.points[i];
    const double rho = D - std::abs(z - f.center);
    const int order = static_cast<int>(std::floor(k_last * rho / D + 1e-9));
    if (std::abs(z - f.center) > cfg.safe_radius * D || order < cfg.min_order) {
      ++res.dropped;
      continue;
    }
    const RadiusEstimate est = radius(recenter(f, z));
    PointMargin p;
    p.n = static_cast<int>(i) + 2;
    p.z = z;
    p.distance = std::abs(z - schedule.z0);
    p.order = order;
    p.radius = std::isinf(est.value) ? kInf : std::max(est.extrapolated, rho);
    p.span = est.confidence_span;
    p.margin = p.radius - p.distance;
    res.points.push_back(p);
  }
  if (res.points.size() < 3) {
    res.status = Status::inconclusive;
    return res;
  }

  // Extension needs support at two points; a point is settled when its estimate spread stays
  // below its distance to z0.
  int ext_points = 0;
  bool all_small = true, any_settled = false;
  for (const auto& p : res.points) {
    if (p.margin - p.span >= cfg.tau_ext * p.distance) ++ext_points;
    if (p.margin - p.span > cfg.tau) all_small = false;
    if (p.span <= p.distance && p.margin <= cfg.tau) any_settled = true;
  }
  if (ext_points >= 2)
    res.status = Status::extendable;
  else if (all_small && any_settled)
    res.status = Status::non_extendable;
  else
    res.status = Status::inconclusive;
  return res;
}

Status combine_disk(Status outside, Status inside) {
  if (outside == Status::non_extendable || inside == Status::non_extendable)
    return Status::non_extendable;
  if (outside == Status::extendable && inside == Status::extendable) return Status::extendable;
  return Status::inconclusive;
}

SideVerdict classify_point(const FourierSpec& u, cplx z0, const ClassifyConfig& cfg) {
  if (std::abs(std::abs(z0) - 1.0) > 1e-9)
    throw PreconditionError("classify_point: z0 must lie on the unit circle");
  z0 /= std::abs(z0);
  auto schedule = [&](cplx p) {
    return cfg.tangential ? TestSchedule::tangential(p, cfg.n_max, cfg.tangential_angle)
                          : TestSchedule::radial(p, cfg.n_max);
  };

  PowerSeries f = split(u).f;
  attach_sampling_noise(u, f);
  PowerSeries gt = invert_exterior(u);
  attach_sampling_noise(u, gt);

  SideVerdict v;
  v.z0 = z0;
  v.tau = cfg.tau;
  v.tau_ext = cfg.tau_ext;
  U1Result out = test_U1(f, schedule(z0), cfg);
  U1Result in = test_U1(gt, schedule(std::conj(z0)), cfg);
  v.outside = out.status;
  v.inside = in.status;
  v.outside_margins = std::move(out.points);
  v.inside_margins = std::move(in.points);
  v.disk = combine_disk(v.outside, v.inside);
  return v;
}

std::vector<SideVerdict> classify_grid(const FourierSpec& u, int grid_size,
                                       const ClassifyConfig& cfg) {
  if (grid_size < 1) throw PreconditionError("classify_grid: grid size must be positive");
  std::vector<SideVerdict> out(static_cast<std::size_t>(grid_size));
  auto work = [&](int j) {
    out[static_cast<std::size_t>(j)] =
        classify_point(u, std::polar(1.0, 2.0 * kPi * j / grid_size), cfg);
  };
  unsigned nt = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, static_cast<unsigned>(grid_size));
  if (nt <= 1) {
    for (int j = 0; j < grid_size; ++j) work(j);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nt);
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int j = static_cast<int>(t); j < grid_size; j += static_cast<int>(nt)) work(j);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<RadiusSample> radius_map(const FourierSpec& u, int radial, int angular, int grid_size,
                                     const ClassifyConfig& cfg) {
  if (radial < 1 || angular < 1 || grid_size < 1)
    throw PreconditionError("radius_map: grid sizes must be positive");
  PowerSeries f = split(u).f;
  attach_sampling_noise(u, f);
  const RadiusEstimate r0 = radius(f);
  const int k_last = last_significant(f);
  const bool entire = std::isinf(r0.value) || k_last <= f.K() / 4;
  std::vector<RadiusSample> out;
  for (int i = 0; i < radial; ++i)
    for (int j = 0; j < angular; ++j) {
      RadiusSample s;
      s.zeta = std::polar(cfg.safe_radius * (i + 1) / radial, 2 * kPi * j / angular);
      s.grid_distance = kInf;
      for (int g = 0; g < grid_size; ++g)
        s.grid_distance = std::min(s.grid_distance, std::abs(s.zeta - std::polar(1.0, 2 * kPi * g / grid_size)));
      if (entire) {
        s.radius = kInf;
      } else {
        const RadiusEstimate e = radius(recenter(f, s.zeta));
        const double rho = *f.domain_radius - std::abs(s.zeta - f.center);
        s.radius = std::isinf(e.value) ? kInf : std::max(e.extrapolated, rho);
      }
      out.push_back(s);
    }
  return out;
}

CandidateProfile CandidateProfile::pure_lacunary(int N) {
  CandidateProfile p;
  p.N = N;
  p.background_degree = -1;
  p.random_phases = false;
  p.decay = 1.0;
  return p;
}

void CandidateProfile::validate() const {
  if (N < 1) throw PreconditionError("profile: N must be positive");
  if (background_degree > N) throw PreconditionError("profile: background degree exceeds N");
  if (gap_base < 2) throw PreconditionError("profile: gap base must be at least 2");
  if (!(decay > 0)) throw PreconditionError("profile: decay must be positive");
  if (first_gap < 0) throw PreconditionError("profile: first gap index must be nonnegative");
}

FourierSpec sample_candidate(std::uint64_t seed, const CandidateProfile& profile) {
  profile.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<int, cplx>> c;
  auto phase = [&] { return profile.random_phases ? std::polar(1.0, 2.0 * kPi * unit(rng)) : cplx(1.0); };

  for (int n = -profile.background_degree; n <= profile.background_degree; ++n) {
    double amp = profile.background_amplitude * unit(rng);
    c.emplace_back(n, amp * phase());
  }
  auto place = [&](int n, double amp) {
    if (profile.side != TailSide::inside) c.emplace_back(n, amp * phase());
    if (profile.side != TailSide::outside) c.emplace_back(-n, amp * phase());
  };
  if (profile.tail == TailKind::lacunary) {
    long idx = 1;
    for (int j = 0; j < profile.first_gap; ++j) idx *= profile.gap_base;
    for (int j = profile.first_gap; idx <= profile.N; ++j, idx *= profile.gap_base)
      place(static_cast<int>(idx), std::exp2(-profile.decay * double(j) * double(j)));
  } else {
    for (int n = 1; n <= profile.N; ++n) place(n, std::pow(double(n), -profile.decay));
  }
  return FourierSpec::from_coeffs(c, profile.N);
}

}  // namespace sidext
