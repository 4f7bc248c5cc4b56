#pragma once

#include <optional>
#include <string_view>

#include "relaybound/ext_real.hpp"

namespace relaybound {

/// Gaussian primitive relay channel, described through the ratios the
/// bounds depend on: snr1 = P/N1 (source to relay), snr2 = P/N2 (source to
/// destination) and the rate r0 of the relay-destination link in bits/use.
struct ChannelParams {
  ExtReal snr1;
  ExtReal snr2;
  double r0 = 0.0;
  /// snr2/snr1 (= N1/N2) along which a doubly infinite channel is
  /// approached. Ignored unless both SNRs are infinite; the cut-set and
  /// tightened bounds default it to 1 (symmetric limit).
  std::optional<double> limit_ratio;

  /// Throws DomainError for a negative/non-finite r0 or a limit ratio that
  /// is not finite and > 0.
  void validate() const;
  [[nodiscard]] bool doubly_infinite() const {
    return snr1.is_infinite() && snr2.is_infinite();
  }
};

/// Constraints in the order used for tie-breaking.
enum class Constraint {
  broadcast,              ///< 1/2 log(1 + snr1 + snr2)
  multiple_access,        ///< 1/2 log(1 + snr2) + r0 - a
  relay_tradeoff,         ///< 1/2 log(1 + max(snr1, snr2)) + a + sqrt(2a ln2) log e
  relay_tradeoff_snr1,    ///< same with snr1 in place of the max (snr1 >= snr2)
  relay_tradeoff_scaled,  ///< 1/2 log(1 + snr1) + rho a + sqrt(rho (2 rho a ln2 + 1 - rho)) log e
};

std::string_view to_string(Constraint c);

enum class BoundKind {
  cutset,      ///< broadcast and multiple-access cuts
  tightened,   ///< adds the a-dependent relay trade-off
  sharpened,   ///< adds the scaled trade-off; requires snr1 >= snr2
};

std::string_view to_string(BoundKind kind);

struct BoundResult {
  /// Bound in bits per channel use.
  ExtReal value;
  Constraint active_constraint = Constraint::broadcast;
  /// Maximising auxiliary parameter a in [0, r0]; 0 for the cut-set bound.
  double a_star = 0.0;
  /// value minus the common base term of the constraint set. Equals value
  /// for finite channels and stays finite at infinite SNR, where it is what
  /// bound differences are computed from.
  ExtReal offset;
};

/// Right-hand sides of one bound's constraints as functions of a.
///
/// Every right-hand side is base() + offset. For finite channels the base is
/// 0. When snr2 is infinite the base is the divergent term 1/2 log(snr2),
/// which all constraints share, and the accessors return the finite offsets
/// that remain in the limit.
class ConstraintSet {
 public:
  /// Throws DomainError for invalid params, DomainError when kind is
  /// sharpened and snr1 < snr2, IndeterminateLimitError when kind is
  /// sharpened, both SNRs are infinite and no limit_ratio was given.
  static ConstraintSet build(const ChannelParams& params, BoundKind kind);

  [[nodiscard]] BoundKind kind() const { return kind_; }
  [[nodiscard]] double r0() const { return r0_; }
  [[nodiscard]] ExtReal base() const { return base_; }
  /// N1/N2 as used by the scaled constraint (sharpened kind only).
  [[nodiscard]] double rho() const { return rho_; }

  [[nodiscard]] ExtReal c1() const { return broadcast_; }
  /// Strictly decreasing in a.
  [[nodiscard]] double c2_at(double a) const;
  /// Strictly increasing in a. For the sharpened kind this is the
  /// snr1-based trade-off, which equals the max-based one when snr1 >= snr2.
  [[nodiscard]] ExtReal c3_at(double a) const;
  /// Increasing in a (constant when rho = 0). Sharpened kind only.
  [[nodiscard]] std::optional<ExtReal> c5_at(double a) const;

  /// Offset of the bound value at a: minimum over all constraints.
  [[nodiscard]] ExtReal min_at(double a) const;

 private:
  ConstraintSet() = default;

  BoundKind kind_ = BoundKind::cutset;
  double r0_ = 0.0;
  ExtReal base_;
  ExtReal broadcast_;
  double mac0_ = 0.0;
  ExtReal relay0_;
  double rho_ = 1.0;
};

/// Unique a >= 0 with k = 2a + sqrt(2a ln2) log2(e), via the closed form
/// a = u^2 / (2 ln2), u = (-1 + sqrt(1 + 4k ln2)) / 2.
/// Throws DomainError unless k is finite and >= 0.
double solve_astar(double k);

/// min(1/2 log(1 + snr1 + snr2), 1/2 log(1 + snr2) + r0). Ties report
/// multiple_access.
BoundResult cutset_bound(const ChannelParams& params);

/// Max over a in [0, r0] of the minimum of the broadcast, multiple-access
/// (minus a) and relay trade-off constraints; the optimiser is the crossing
/// of the last two, found in closed form by solve_astar.
BoundResult tightened_bound(const ChannelParams& params);

/// As tightened_bound with the scaled trade-off added. Needs snr1 >= snr2.
/// The crossing of the decreasing multiple-access constraint with the
/// increasing min of the two trade-offs is found by bisection.
BoundResult sharpened_bound(const ChannelParams& params);

BoundResult evaluate_bound(const ChannelParams& params, BoundKind kind);

}  // namespace relaybound
