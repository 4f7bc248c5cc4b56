#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace relaybound {

/// Gaussian blow-up setting: U ~ N(0, noise_var I_n), a set A with
/// Pr(U in A) >= 2^(-n a_n), and the extra blow-up slack r.
struct ConcentrationParams {
  int n = 1;
  double noise_var = 1.0;
  double a_n = 0.0;
  double r = 1.0;

  /// Throws DomainError unless n >= 1, noise_var > 0, a_n >= 0, r > 0 and
  /// n a_n <= 1000 (beyond that 2^(-n a_n) underflows).
  void validate() const;

  /// 2^(-n a_n): the smallest set probability the claim applies to.
  [[nodiscard]] double base_probability_floor() const;
  /// sqrt(n) (sqrt(2 noise_var a_n ln2) + r).
  [[nodiscard]] double blowup_radius() const;
  /// 1 - 2^(-n r^2 / (2 noise_var)).
  [[nodiscard]] double floor() const;
  /// 2^(-n r^2 / (2 noise_var)), the complement of floor() without cancellation.
  [[nodiscard]] double floor_complement() const;
};

/// {w : w[axis] <= threshold}. threshold may be +inf (the whole space).
struct Halfspace {
  std::size_t axis = 0;
  double threshold = 0.0;
};

/// Closed Euclidean ball.
struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

struct UnionOfBalls {
  std::vector<Ball> balls;
};

using SetDescriptor = std::variant<Halfspace, Ball, UnionOfBalls>;

std::string_view set_kind(const SetDescriptor& set);

/// Euclidean distance from point to the set (0 inside).
double distance_to_set(const SetDescriptor& set, std::span<const double> point);

/// The image of set under w -> factor * w (factor > 0).
SetDescriptor scaled(const SetDescriptor& set, double factor);

/// Half-space {w_1 <= sqrt(noise_var) Phi^-1(2^(-n a_n))}, whose probability
/// is exactly the base floor.
Halfspace halfspace_for(const ConcentrationParams& params);

/// Ball at the origin whose probability is exactly the base floor (chi-square
/// quantile with n degrees of freedom).
Ball centered_ball_for(const ConcentrationParams& params);

enum class Method { exact, monte_carlo };
enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Method m);
std::string_view to_string(Verdict v);

/// PASS if estimate - 3 std_error >= floor, FAIL if estimate + 3 std_error < floor,
/// INCONCLUSIVE otherwise.
Verdict classify_estimate(double estimate, double std_error, double floor);

struct ConcentrationCheck {
  ConcentrationParams params;
  SetDescriptor set;
  Method method = Method::exact;
  double base_prob = 0.0;
  double base_stderr = 0.0;
  double blowup_prob = 0.0;
  /// 1 - blowup_prob, kept separately for accuracy near 1.
  double blowup_complement = 0.0;
  double blowup_stderr = 0.0;
  double floor = 0.0;
  Verdict verdict = Verdict::fail;
  bool holds = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Exact check on halfspace_for(params); the blow-up of a half-space by d
/// is the half-space shifted by d.
ConcentrationCheck halfspace_check(const ConcentrationParams& params);

/// Exact check for a half-space or a ball (non-central chi-square).
/// Throws DomainError for unions and PreconditionError when the set's
/// probability is below the base floor.
ConcentrationCheck exact_check(const ConcentrationParams& params, const SetDescriptor& set);

/// Monte Carlo estimate of Pr(U within blowup_radius of set) with binomial
/// standard errors. Samples are drawn in fixed-size blocks, each from its
/// own generator seeded by (seed, block index), so the estimate depends on
/// the seed only, not on the thread count.
///
/// Verdict: pass if p - 3 se >= floor, fail if p + 3 se < floor, otherwise
/// inconclusive. Throws PreconditionError when the estimated set probability
/// is more than 3 standard errors below the base floor, and DomainError for
/// samples < 1000 or a set whose dimension does not match n.
ConcentrationCheck monte_carlo_check(const ConcentrationParams& params, const SetDescriptor& set,
                                     std::uint64_t samples, std::uint64_t seed);

}  // namespace relaybound
