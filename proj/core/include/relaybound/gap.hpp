#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "relaybound/bounds.hpp"

namespace relaybound {

/// Which improved bound the cut-set bound is compared against.
enum class Variant { tightened, sharpened };

std::string_view to_string(Variant v);
BoundKind bound_kind(Variant v);

struct GapReport {
  ChannelParams params;
  ExtReal cutset;
  ExtReal improved;
  /// cutset - improved in bits; finite even when both bounds are infinite.
  double gap = 0.0;
  Variant variant = Variant::tightened;
  double a_star = 0.0;
  Constraint cutset_active = Constraint::broadcast;
  Constraint improved_active = Constraint::broadcast;
};

/// Gap between the cut-set bound and the chosen improved bound. Both bounds
/// share the constraint set's base term, so the gap is the difference of
/// their finite offsets; at snr1 = snr2 = inf this is the limit of the gap
/// along the ray snr2/snr1 = limit_ratio (default 1 for the tightened bound).
GapReport gap(const ChannelParams& params, Variant variant);

struct GridPoint {
  ExtReal snr1;
  ExtReal snr2;
  double r0 = 0.0;
};

/// Parameter grid for max_gap_search. Every ordered pair drawn from
/// snr_values is probed (only snr1 >= snr2 for the sharpened variant),
/// crossed with r0_values. The symmetric limit point (inf, inf) is added
/// for each r0 when include_limit_point is set.
struct GridSpec {
  std::vector<double> snr_values;
  std::vector<double> r0_values;
  bool include_limit_point = true;

  /// 41 log-spaced SNRs on [1e-2, 1e6]; r0 on [0, 1] in steps of 1e-3,
  /// refined to 1e-5 on [0.49, 0.51].
  static GridSpec defaults();
  /// n log-spaced values on [lo, hi].
  static std::vector<double> log_spaced(double lo, double hi, std::size_t n);
};

struct GapSupremum {
  double value = 0.0;
  GridPoint argmax;
  /// Largest gap over the finite part of the grid.
  double finite_max = 0.0;
  GridPoint finite_argmax;
  /// Gap is nondecreasing in snr along every snr1 = snr2 ray of the grid
  /// and never above the limit-point gap for the same r0.
  bool symmetric_rays_nondecreasing = true;
  /// At the argmax both the improved bound and the cut-set bound are
  /// limited by the multiple-access constraint.
  bool argmax_multiple_access_active = false;
  std::size_t points_evaluated = 0;
};

GapSupremum max_gap_search(Variant variant, const GridSpec& grid = GridSpec::defaults());

/// Optimal a for the sharpened bound when the cut-set multiple-access
/// constraint sits exactly on its boundary with the broadcast one:
/// the a >= 0 solving
///   1/2 log((1 + x1 + x2)/(1 + x1)) = (rho + 1) a + sqrt(rho (2 rho a ln2 + 1 - rho)) log e
/// with rho = x2/x1, evaluated in closed form. Returns 0 when the equation
/// has no nonnegative root. x1 = x2 = inf uses the limit along limit_ratio
/// (default 1). Throws DomainError unless x1 >= x2 > 0.
double boundary_astar(const ExtReal& x1, const ExtReal& x2,
                      std::optional<double> limit_ratio = std::nullopt);

/// Same root found by bisection on the defining equation. Finite inputs only.
double boundary_astar_by_bisection(double x1, double x2);

/// (gap at (inf, inf, 0.5) / 4) * num_nodes: the per-node pre-constant below
/// which no topology-independent cut-set approximation gap can fall.
/// Throws DomainError for num_nodes < 1.
double network_gap_lower_bound(long long num_nodes);

}  // namespace relaybound
