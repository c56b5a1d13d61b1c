#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sidext/fourier.hpp"
#include "sidext/power_series.hpp"

namespace sidext {

enum class Status { extendable, non_extendable, inconclusive };
std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct ClassifyConfig {
  double tau = 0.05;       ///< non-extendability tolerance, absolute
  double tau_ext = 0.2;    ///< extendability threshold, relative to the point's distance to z0
  int n_max = 10;
  int min_order = 16;      ///< smallest faithful recentered order a point may use
  double safe_radius = 0.98;
  bool tangential = false;
  double tangential_angle = 0.25;  ///< radians off the radius, tangential schedule only
  int threads = 0;                 ///< 0 picks hardware concurrency
};

struct TestSchedule {
  cplx z0;
  int n_max = 10;
  std::vector<cplx> points;  ///< points[i] pairs with exponent n = i + 2

  static TestSchedule radial(cplx z0, int n_max);
  static TestSchedule tangential(cplx z0, int n_max, double angle);
};

struct PointMargin {
  int n = 0;
  cplx z;
  double distance = 0.0;  ///< |z_n - z0|
  double radius = 0.0;    ///< estimated R at z_n (+inf allowed)
  double margin = 0.0;    ///< radius - distance
  double span = 0.0;      ///< confidence span of the radius estimate
  int order = 0;          ///< faithful recentered order used
};

struct U1Result {
  Status status = Status::inconclusive;
  std::vector<PointMargin> points;  ///< kept points, ordered by n
  int dropped = 0;
};

U1Result test_U1(const PowerSeries& f, const TestSchedule& schedule, const ClassifyConfig& cfg);

struct SideVerdict {
  cplx z0;
  Status outside = Status::inconclusive;
  Status inside = Status::inconclusive;
  Status disk = Status::inconclusive;
  std::vector<PointMargin> outside_margins;
  std::vector<PointMargin> inside_margins;  ///< measured in the inverted plane at conj(z0)
  double tau = 0.0, tau_ext = 0.0;

  bool in_U2() const { return outside == Status::non_extendable; }
  bool in_U3() const { return inside == Status::non_extendable; }
  bool in_U4() const { return in_U2() && in_U3(); }
  bool in_U5() const { return disk == Status::non_extendable; }
};

/// Disk status from the two one-sided statuses.
Status combine_disk(Status outside, Status inside);

SideVerdict classify_point(const FourierSpec& u, cplx z0, const ClassifyConfig& cfg = {});
std::vector<SideVerdict> classify_grid(const FourierSpec& u, int grid_size,
                                       const ClassifyConfig& cfg = {});

struct RadiusSample {
  cplx zeta;
  double radius = 0.0;         ///< estimated radius of convergence at zeta (+inf allowed)
  double grid_distance = 0.0;  ///< |zeta - nearest classification grid point|
};

/// Radius estimates of the inside part f on a polar grid: rings r_i = safe_radius (i+1)/radial,
/// rays 2 pi j / angular.
std::vector<RadiusSample> radius_map(const FourierSpec& u, int radial, int angular, int grid_size,
                                     const ClassifyConfig& cfg = {});

enum class TailKind { lacunary, power };
enum class TailSide { outside, inside, both };

struct CandidateProfile {
  int N = 4096;
  int background_degree = 4;
  double background_amplitude = 1.0;
  TailKind tail = TailKind::lacunary;
  TailSide side = TailSide::outside;
  int gap_base = 2;
  double decay = 1.0;    ///< lacunary: |a_{b^j}| = 2^(-decay j^2); power: |a_n| = n^-decay
  int first_gap = 0;
  bool random_phases = true;

  static CandidateProfile pure_lacunary(int N = 256);
  void validate() const;
};

FourierSpec sample_candidate(std::uint64_t seed, const CandidateProfile& profile);

}  // namespace sidext
