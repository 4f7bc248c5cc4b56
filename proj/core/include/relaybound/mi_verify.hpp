#pragma once

#include <span>
#include <vector>

namespace relaybound {

/// Single-letter instance of the relay's quantiser: X uniform on
/// {-sqrt(P), +sqrt(P)}, Z = X + W1 and Y = X + W2 with independent
/// N(0, noise_var) noises, and I = 1{Z > threshold}.
struct QuantizerRelay {
  double power = 1.0;
  double noise_var = 1.0;
  double threshold = 0.0;

  /// Throws DomainError unless power > 0, noise_var > 0, threshold finite.
  void validate() const;
};

/// All quantities in bits.
struct MIReport {
  QuantizerRelay relay;
  double i_xi = 0.0;         ///< I(X; I)
  double i_yi = 0.0;         ///< I(Y; I)
  double a = 0.0;            ///< H(I | X)
  double lhs = 0.0;          ///< I(X; I) - I(Y; I) = H(I | Y) - H(I | X)
  double rhs = 0.0;          ///< a + sqrt(2a ln2) log2(e)
  bool holds = false;        ///< lhs <= rhs + 1e-6
  double h_i_given_y = 0.0;  ///< H(I | Y)
  double h_y = 0.0;          ///< differential entropy h(Y)
  double h_y_given_i = 0.0;  ///< differential entropy h(Y | I)

  [[nodiscard]] double slack() const { return rhs - lhs; }
};

inline constexpr double kMiHoldsTolerance = 1e-6;

/// Evaluates every term of I(X;I) - I(Y;I) <= a + sqrt(2a ln2) log e.
/// Discrete terms are exact; H(I|Y), h(Y) and h(Y|I) come from adaptive
/// quadrature over [-(sqrt(P) + 8 sqrt(N)), sqrt(P) + 8 sqrt(N)].
/// Quadrature failure propagates as ConvergenceError.
MIReport evaluate_quantizer_relay(const QuantizerRelay& relay);

/// One report per (snr, scale) cell with power = snr, noise_var = 1 and
/// threshold = scale * sqrt(snr), in row-major order over snr_grid.
/// Throws DomainError on an empty grid; cell failures are rethrown with the
/// cell coordinates in the message.
std::vector<MIReport> sweep_quantizer_relays(std::span<const double> snr_grid,
                                             std::span<const double> threshold_scales);

}  // namespace relaybound
