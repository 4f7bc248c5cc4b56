#pragma once

#include <functional>
#include <numbers>

namespace relaybound {

inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kLog2E = std::numbers::log2e;

/// Tolerance and work budget shared by the root finder and the quadrature.
/// For integrate(), max_iterations bounds the number of interval splits.
struct SolverConfig {
  double abs_tolerance = 1e-12;
  int max_iterations = 200;

  /// Throws DomainError unless abs_tolerance > 0 and max_iterations >= 1.
  void validate() const;
};

/// Standard normal CDF. Saturates to exactly 0 or 1 far in the tails.
double gaussian_cdf(double x);

/// Upper tail Q(x) = 1 - gaussian_cdf(x), computed without cancellation.
double gaussian_tail(double x);

/// Standard normal density.
double gaussian_pdf(double x);

/// Inverse of gaussian_cdf on (0, 1), found by bisection on [-40, 40].
double gaussian_cdf_inv(double p, const SolverConfig& cfg = {});

/// Final bracket of a bisection: f changes sign (or vanishes) on [lo, hi].
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Halves [lo, hi] until its width is at most cfg.abs_tolerance (or no
/// representable midpoint remains). Requires f(lo) and f(hi) of opposite
/// sign or one of them zero; throws NoBracketError otherwise and
/// ConvergenceError when max_iterations is exhausted.
Bracket bisect_bracket(const std::function<double(double)>& f, double lo, double hi,
                       const SolverConfig& cfg = {});

/// Midpoint of bisect_bracket, or the endpoint where f vanishes exactly.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const SolverConfig& cfg = {});

/// H_b(p) in bits with 0 log 0 = 0. Throws DomainError outside [0, 1].
double binary_entropy(double p);

/// Entropy in bits of the two-point pmf {p0, p1}. Both masses are passed so
/// that a mass close to 1 does not lose its tiny complement to rounding.
double binary_entropy(double p0, double p1);

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi]. Splits the
/// interval with the largest error estimate until the summed estimate is at
/// most cfg.abs_tolerance; throws ConvergenceError if that takes more than
/// cfg.max_iterations splits.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const SolverConfig& cfg = {});

}  // namespace relaybound
