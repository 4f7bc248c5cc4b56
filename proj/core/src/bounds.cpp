#include "relaybound/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "relaybound/errors.hpp"
#include "relaybound/numerics.hpp"

namespace relaybound {

namespace {

constexpr double kTieTolerance = 1e-12;

double half_log2(double x) { return 0.5 * std::log2(x); }

// a + sqrt(2a ln2) log2(e): the cost of the relay's conditional entropy.
double tradeoff_growth(double a) { return a + std::sqrt(2.0 * a * kLn2) * kLog2E; }

double scaled_growth(double a, double rho) {
  return rho * a + std::sqrt(rho * (rho * 2.0 * a * kLn2 + 1.0 - rho)) * kLog2E;
}

ExtReal plus(const ExtReal& x, double offset) {
  if (x.is_infinite()) return x;
  return ExtReal(x.value() + offset);
}

// Index of the smallest entry; ties (within kTieTolerance) go to the lower index.
template <std::size_t N>
std::size_t argmin_lowest(const std::array<ExtReal, N>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < N; ++i) {
    if (values[i] < values[best]) best = i;
  }
  if (values[best].is_infinite()) return 0;
  const double target = values[best].value();
  for (std::size_t i = 0; i < best; ++i) {
    if (values[i].is_finite() && values[i].value() - target <= kTieTolerance) return i;
  }
  return best;
}

}  // namespace

void ChannelParams::validate() const {
  if (!std::isfinite(r0) || r0 < 0.0) throw DomainError("r0 must be finite and >= 0");
  if (limit_ratio && !(std::isfinite(*limit_ratio) && *limit_ratio > 0.0)) {
    throw DomainError("limit ratio snr2/snr1 must be finite and > 0");
  }
}

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::broadcast: return "broadcast";
    case Constraint::multiple_access: return "multiple_access";
    case Constraint::relay_tradeoff: return "relay_tradeoff";
    case Constraint::relay_tradeoff_snr1: return "relay_tradeoff_snr1";
    case Constraint::relay_tradeoff_scaled: return "relay_tradeoff_scaled";
  }
  return "unknown";
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::cutset: return "cutset";
    case BoundKind::tightened: return "theorem1";
    case BoundKind::sharpened: return "prop5";
  }
  return "unknown";
}

ConstraintSet ConstraintSet::build(const ChannelParams& params, BoundKind kind) {
  params.validate();
  if (kind == BoundKind::sharpened) {
    if (params.snr1 < params.snr2) {
      throw PreconditionError("sharpened bound requires snr1 >= snr2 (N1 <= N2)");
    }
    if (params.doubly_infinite()) {
      if (!params.limit_ratio) {
        throw IndeterminateLimitError(
            "sharpened bound at snr1 = snr2 = inf needs the limit ratio snr2/snr1");
      }
      if (*params.limit_ratio > 1.0) {
        throw PreconditionError("sharpened bound requires limit ratio snr2/snr1 <= 1");
      }
    }
  }

  ConstraintSet set;
  set.kind_ = kind;
  set.r0_ = params.r0;
  const ExtReal& x1 = params.snr1;
  const ExtReal& x2 = params.snr2;

  if (x1.is_finite() && x2.is_finite()) {
    const double s1 = x1.value();
    const double s2 = x2.value();
    set.base_ = ExtReal(0.0);
    set.broadcast_ = half_log2_1p(ExtReal(s1 + s2));
    set.mac0_ = half_log2_1p(x2).value() + params.r0;
    set.relay0_ = half_log2_1p(ExtReal(std::max(s1, s2)));
    set.rho_ = s1 > 0.0 ? s2 / s1 : 1.0;
  } else if (x2.is_finite()) {
    // Relay sees X noiselessly: every constraint except multiple access diverges.
    set.base_ = ExtReal(0.0);
    set.broadcast_ = ExtReal::infinity();
    set.mac0_ = half_log2_1p(x2).value() + params.r0;
    set.relay0_ = ExtReal::infinity();
    set.rho_ = 0.0;
  } else if (x1.is_finite()) {
    // Offsets relative to 1/2 log(snr2): log(1 + x1 + x2) - log x2 -> 0.
    set.base_ = ExtReal::infinity();
    set.broadcast_ = ExtReal(0.0);
    set.mac0_ = params.r0;
    set.relay0_ = ExtReal(0.0);
  } else {
    // Offsets relative to 1/2 log(snr2) with snr1 = snr2 / rho.
    const double rho = params.limit_ratio.value_or(1.0);
    set.base_ = ExtReal::infinity();
    set.broadcast_ = ExtReal(half_log2(1.0 + 1.0 / rho));
    set.mac0_ = params.r0;
    set.relay0_ = ExtReal(half_log2(std::max(1.0, 1.0 / rho)));
    set.rho_ = rho;
  }
  return set;
}

double ConstraintSet::c2_at(double a) const { return mac0_ - a; }

ExtReal ConstraintSet::c3_at(double a) const { return plus(relay0_, tradeoff_growth(a)); }

std::optional<ExtReal> ConstraintSet::c5_at(double a) const {
  if (kind_ != BoundKind::sharpened) return std::nullopt;
  return plus(relay0_, scaled_growth(a, rho_));
}

ExtReal ConstraintSet::min_at(double a) const {
  ExtReal m = std::min(broadcast_, ExtReal(c2_at(a)));
  if (kind_ == BoundKind::cutset) return m;
  m = std::min(m, c3_at(a));
  if (auto c5 = c5_at(a)) m = std::min(m, *c5);
  return m;
}

double solve_astar(double k) {
  if (!std::isfinite(k) || k < 0.0) throw DomainError("solve_astar: k must be finite and >= 0");
  // u solves u^2 + u - k ln2 = 0; rationalised to avoid cancellation at small k.
  const double c = k * kLn2;
  const double u = 2.0 * c / (1.0 + std::sqrt(1.0 + 4.0 * c));
  return u * u / (2.0 * kLn2);
}

namespace {

BoundResult finish(const ConstraintSet& set, double a_star, Constraint active, ExtReal offset) {
  BoundResult result;
  result.offset = offset;
  result.value = set.base() + offset;
  result.a_star = a_star;
  result.active_constraint = active;
  return result;
}

// Crossing of the multiple-access constraint with the unscaled trade-off.
double closed_form_astar(const ConstraintSet& set) {
  const ExtReal relay0 = set.c3_at(0.0);
  if (relay0.is_infinite()) return 0.0;
  const double k = set.c2_at(0.0) - relay0.value();
  return k > 0.0 ? std::min(solve_astar(k), set.r0()) : 0.0;
}

}  // namespace

BoundResult cutset_bound(const ChannelParams& params) {
  const ConstraintSet set = ConstraintSet::build(params, BoundKind::cutset);
  const ExtReal mac(set.c2_at(0.0));
  const bool mac_active = mac <= set.c1();
  return finish(set, 0.0, mac_active ? Constraint::multiple_access : Constraint::broadcast,
                mac_active ? mac : set.c1());
}

BoundResult tightened_bound(const ChannelParams& params) {
  const ConstraintSet set = ConstraintSet::build(params, BoundKind::tightened);
  const double a_star = closed_form_astar(set);
  const std::array<ExtReal, 3> values = {set.c1(), ExtReal(set.c2_at(a_star)),
                                         set.c3_at(a_star)};
  const std::size_t idx = argmin_lowest(values);
  constexpr std::array<Constraint, 3> kNames = {
      Constraint::broadcast, Constraint::multiple_access, Constraint::relay_tradeoff};
  return finish(set, a_star, kNames[idx], values[idx]);
}

BoundResult sharpened_bound(const ChannelParams& params) {
  const ConstraintSet set = ConstraintSet::build(params, BoundKind::sharpened);

  // Positive while the multiple-access constraint is the looser of the two sides.
  auto excess = [&set](double a) {
    const ExtReal rising = std::min(set.c3_at(a), *set.c5_at(a));
    if (rising.is_infinite()) return -std::numeric_limits<double>::infinity();
    return set.c2_at(a) - rising.value();
  };

  double a_star = 0.0;
  if (set.rho() == 1.0) {
    // The scaled trade-off coincides with the unscaled one.
    a_star = closed_form_astar(set);
  } else if (excess(0.0) > 0.0) {
    if (excess(set.r0()) >= 0.0) {
      a_star = set.r0();
    } else {
      // Upper end: there the multiple-access side is the minimum and lies
      // within the bracket width of the max-min value.
      a_star = bisect_bracket(excess, 0.0, set.r0()).hi;
    }
  }
  const std::array<ExtReal, 4> values = {set.c1(), ExtReal(set.c2_at(a_star)),
                                         set.c3_at(a_star), *set.c5_at(a_star)};
  const std::size_t idx = argmin_lowest(values);
  constexpr std::array<Constraint, 4> kNames = {
      Constraint::broadcast, Constraint::multiple_access, Constraint::relay_tradeoff_snr1,
      Constraint::relay_tradeoff_scaled};
  return finish(set, a_star, kNames[idx], values[idx]);
}

BoundResult evaluate_bound(const ChannelParams& params, BoundKind kind) {
  switch (kind) {
    case BoundKind::cutset: return cutset_bound(params);
    case BoundKind::tightened: return tightened_bound(params);
    case BoundKind::sharpened: return sharpened_bound(params);
  }
  throw DomainError("unknown bound kind");
}

}  // namespace relaybound
