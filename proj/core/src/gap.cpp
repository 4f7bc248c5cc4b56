#include "relaybound/gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relaybound/errors.hpp"
#include "relaybound/numerics.hpp"

namespace relaybound {

namespace {

// Rounding slack for the ray checks; finite symmetric gaps approach the
// limit value to within a few ulps.
constexpr double kRayTolerance = 1e-12;

}  // namespace

std::string_view to_string(Variant v) {
  return v == Variant::tightened ? "theorem1" : "prop5";
}

BoundKind bound_kind(Variant v) {
  return v == Variant::tightened ? BoundKind::tightened : BoundKind::sharpened;
}

GapReport gap(const ChannelParams& params, Variant variant) {
  const BoundResult cut = cutset_bound(params);
  const BoundResult improved = evaluate_bound(params, bound_kind(variant));

  GapReport report;
  report.params = params;
  report.variant = variant;
  report.cutset = cut.value;
  report.improved = improved.value;
  report.a_star = improved.a_star;
  report.cutset_active = cut.active_constraint;
  report.improved_active = improved.active_constraint;
  // The cut-set offset is finite whenever the multiple-access term is, and
  // the improved bound never exceeds it.
  if (cut.offset.is_infinite()) {
    throw DomainError("gap: cut-set bound is infinite relative to its base");
  }
  report.gap = cut.offset.value() - improved.offset.value();
  return report;
}

GridSpec GridSpec::defaults() {
  GridSpec grid;
  grid.snr_values = log_spaced(1e-2, 1e6, 41);
  for (int i = 0; i <= 1000; ++i) grid.r0_values.push_back(i / 1000.0);
  for (int i = 0; i <= 2000; ++i) grid.r0_values.push_back(0.49 + i / 100000.0);
  std::sort(grid.r0_values.begin(), grid.r0_values.end());
  grid.r0_values.erase(std::unique(grid.r0_values.begin(), grid.r0_values.end(),
                                   [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                       grid.r0_values.end());
  return grid;
}

std::vector<double> GridSpec::log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi >= lo) || n == 0) throw DomainError("log_spaced: need 0 < lo <= hi, n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
  out.back() = hi;
  return out;
}

GapSupremum max_gap_search(Variant variant, const GridSpec& grid) {
  GapSupremum best;
  best.value = -std::numeric_limits<double>::infinity();
  best.finite_max = -std::numeric_limits<double>::infinity();

  std::vector<double> limit_gap(grid.r0_values.size(), std::numeric_limits<double>::infinity());
  if (grid.include_limit_point) {
    for (std::size_t j = 0; j < grid.r0_values.size(); ++j) {
      ChannelParams p{ExtReal::infinity(), ExtReal::infinity(), grid.r0_values[j], 1.0};
      const double g = gap(p, variant).gap;
      limit_gap[j] = g;
      ++best.points_evaluated;
      if (g > best.value) {
        best.value = g;
        best.argmax = {p.snr1, p.snr2, p.r0};
      }
    }
  }

  std::vector<double> previous_diagonal(grid.r0_values.size(),
                                        -std::numeric_limits<double>::infinity());
  std::vector<double> snrs = grid.snr_values;
  std::sort(snrs.begin(), snrs.end());
  for (std::size_t i = 0; i < snrs.size(); ++i) {
    for (double s2 : snrs) {
      const double s1 = snrs[i];
      if (variant == Variant::sharpened && s1 < s2) continue;
      for (std::size_t j = 0; j < grid.r0_values.size(); ++j) {
        ChannelParams p{ExtReal(s1), ExtReal(s2), grid.r0_values[j], std::nullopt};
        const double g = gap(p, variant).gap;
        ++best.points_evaluated;
        if (g > best.finite_max) {
          best.finite_max = g;
          best.finite_argmax = {p.snr1, p.snr2, p.r0};
        }
        if (g > best.value) {
          best.value = g;
          best.argmax = {p.snr1, p.snr2, p.r0};
        }
        if (s1 == s2) {
          if (g < previous_diagonal[j] - kRayTolerance || g > limit_gap[j] + kRayTolerance) {
            best.symmetric_rays_nondecreasing = false;
          }
          previous_diagonal[j] = g;
        }
      }
    }
  }

  if (best.points_evaluated > 0) {
    ChannelParams at{best.argmax.snr1, best.argmax.snr2, best.argmax.r0, std::nullopt};
    if (at.doubly_infinite()) at.limit_ratio = 1.0;
    const GapReport r = gap(at, variant);
    best.argmax_multiple_access_active = r.cutset_active == Constraint::multiple_access &&
                                         r.improved_active == Constraint::multiple_access;
  } else {
    best.value = 0.0;
    best.finite_max = 0.0;
  }
  return best;
}

double boundary_astar(const ExtReal& x1, const ExtReal& x2, std::optional<double> limit_ratio) {
  if (x2 > x1) throw DomainError("boundary_astar: requires x1 >= x2");
  if (x2 == ExtReal(0.0)) throw DomainError("boundary_astar: requires x2 > 0");

  double t = 0.0;  // x2 / x1 = N1 / N2
  double log_term = 0.0;  // ln(1 + x2 / (1 + x1))
  if (x1.is_infinite() && x2.is_infinite()) {
    t = limit_ratio.value_or(1.0);
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("boundary_astar: limit ratio must lie in (0, 1]");
    log_term = std::log1p(t);
  } else if (x1.is_infinite()) {
    return 0.0;
  } else {
    t = x2.value() / x1.value();
    log_term = std::log1p(x2.value() / (1.0 + x1.value()));
  }

  // No nonnegative root: the right-hand side already exceeds the left at a = 0.
  if (0.5 * log_term < std::sqrt(t * (1.0 - t))) return 0.0;

  const double tp1 = t + 1.0;
  const double m = tp1 * log_term + 2.0 * t * t;
  const double disc = m * m - tp1 * tp1 * (log_term * log_term + 4.0 * t * (t - 1.0));
  return std::max(0.0, (m - std::sqrt(std::max(0.0, disc))) / (2.0 * tp1 * tp1 * kLn2));
}

double boundary_astar_by_bisection(double x1, double x2) {
  if (!(std::isfinite(x1) && std::isfinite(x2))) {
    throw DomainError("boundary_astar_by_bisection: finite inputs only");
  }
  if (!(x2 > 0.0) || x2 > x1) throw DomainError("boundary_astar_by_bisection: requires x1 >= x2 > 0");
  const double rho = x2 / x1;
  const double delta_c = 0.5 * std::log1p(x2 / (1.0 + x1)) * kLog2E;
  auto f = [rho, delta_c](double a) {
    return (rho + 1.0) * a + std::sqrt(rho * (rho * 2.0 * a * kLn2 + 1.0 - rho)) * kLog2E - delta_c;
  };
  if (f(0.0) >= 0.0) return 0.0;
  return bisect(f, 0.0, delta_c / (rho + 1.0));
}

double network_gap_lower_bound(long long num_nodes) {
  if (num_nodes < 1) throw DomainError("network_gap_lower_bound: num_nodes must be >= 1");
  const ChannelParams limit{ExtReal::infinity(), ExtReal::infinity(), 0.5, 1.0};
  const double per_antenna = gap(limit, Variant::tightened).gap / 4.0;
  return per_antenna * static_cast<double>(num_nodes);
}

}  // namespace relaybound
