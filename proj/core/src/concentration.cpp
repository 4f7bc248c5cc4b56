#include "relaybound/concentration.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "relaybound/errors.hpp"
#include "relaybound/numerics.hpp"

namespace relaybound {

namespace {

constexpr std::uint64_t kBlockSize = 4096;
constexpr double kGuardBand = 3.0;
constexpr double kExactHypothesisSlack = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double ball_distance(const Ball& ball, std::span<const double> point) {
  double sq = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double d = point[i] - ball.center[i];
    sq += d * d;
  }
  return std::max(0.0, std::sqrt(sq) - ball.radius);
}

void check_dimension(const SetDescriptor& set, int n) {
  const auto dim = static_cast<std::size_t>(n);
  auto check_ball = [dim](const Ball& b) {
    if (b.center.size() != dim) throw DomainError("ball centre dimension does not match n");
    if (!(b.radius >= 0.0)) throw DomainError("ball radius must be >= 0");
  };
  std::visit(Overloaded{
                 [dim](const Halfspace& h) {
                   if (h.axis >= dim) throw DomainError("half-space axis out of range");
                 },
                 check_ball,
                 [&](const UnionOfBalls& u) {
                   if (u.balls.empty()) throw DomainError("union of balls is empty");
                   for (const Ball& b : u.balls) check_ball(b);
                 },
             },
             set);
}

// Pr(||U - c|| <= radius) and its complement for U ~ N(0, noise_var I_n).
std::pair<double, double> ball_probability(const Ball& ball, int n, double noise_var) {
  if (ball.radius <= 0.0) return {0.0, 1.0};
  const double x = ball.radius * ball.radius / noise_var;
  const double lambda =
      std::inner_product(ball.center.begin(), ball.center.end(), ball.center.begin(), 0.0) /
      noise_var;
  if (lambda == 0.0) {
    boost::math::chi_squared_distribution<double> chi(n);
    return {boost::math::cdf(chi, x), boost::math::cdf(boost::math::complement(chi, x))};
  }
  boost::math::non_central_chi_squared_distribution<double> chi(n, lambda);
  return {boost::math::cdf(chi, x), boost::math::cdf(boost::math::complement(chi, x))};
}

ConcentrationCheck exact_result(const ConcentrationParams& params, const SetDescriptor& set,
                                double base, double blowup, double blowup_complement) {
  if (base < params.base_probability_floor() * (1.0 - kExactHypothesisSlack)) {
    throw PreconditionError("set probability " + std::to_string(base) +
                            " is below the base floor 2^(-n a_n)");
  }
  ConcentrationCheck c;
  c.params = params;
  c.set = set;
  c.method = Method::exact;
  c.base_prob = base;
  c.blowup_prob = blowup;
  c.blowup_complement = blowup_complement;
  c.floor = params.floor();
  c.holds = blowup_complement <= params.floor_complement();
  c.verdict = c.holds ? Verdict::pass : Verdict::fail;
  return c;
}

}  // namespace

void ConcentrationParams::validate() const {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) throw DomainError("noise_var must be > 0");
  if (!(a_n >= 0.0) || !std::isfinite(a_n)) throw DomainError("a_n must be >= 0");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be > 0");
  if (static_cast<double>(n) * a_n > 1000.0) {
    throw DomainError("n * a_n > 1000: 2^(-n a_n) underflows");
  }
}

double ConcentrationParams::base_probability_floor() const {
  return std::exp2(-static_cast<double>(n) * a_n);
}

double ConcentrationParams::blowup_radius() const {
  return std::sqrt(static_cast<double>(n)) * (std::sqrt(2.0 * noise_var * a_n * kLn2) + r);
}

double ConcentrationParams::floor() const { return 1.0 - floor_complement(); }

double ConcentrationParams::floor_complement() const {
  return std::exp2(-static_cast<double>(n) * r * r / (2.0 * noise_var));
}

std::string_view set_kind(const SetDescriptor& set) {
  return std::visit(Overloaded{
                        [](const Halfspace&) { return std::string_view("halfspace"); },
                        [](const Ball&) { return std::string_view("ball"); },
                        [](const UnionOfBalls&) { return std::string_view("union_of_balls"); },
                    },
                    set);
}

double distance_to_set(const SetDescriptor& set, std::span<const double> point) {
  return std::visit(
      Overloaded{
          [&](const Halfspace& h) { return std::max(0.0, point[h.axis] - h.threshold); },
          [&](const Ball& b) { return ball_distance(b, point); },
          [&](const UnionOfBalls& u) {
            double best = std::numeric_limits<double>::infinity();
            for (const Ball& b : u.balls) best = std::min(best, ball_distance(b, point));
            return best;
          },
      },
      set);
}

SetDescriptor scaled(const SetDescriptor& set, double factor) {
  if (!(factor > 0.0)) throw DomainError("scale factor must be > 0");
  auto scale_ball = [factor](Ball b) {
    for (double& c : b.center) c *= factor;
    b.radius *= factor;
    return b;
  };
  return std::visit(Overloaded{
                        [&](const Halfspace& h) -> SetDescriptor {
                          return Halfspace{h.axis, h.threshold * factor};
                        },
                        [&](const Ball& b) -> SetDescriptor { return scale_ball(b); },
                        [&](const UnionOfBalls& u) -> SetDescriptor {
                          UnionOfBalls out;
                          for (const Ball& b : u.balls) out.balls.push_back(scale_ball(b));
                          return out;
                        },
                    },
                    set);
}

Halfspace halfspace_for(const ConcentrationParams& params) {
  params.validate();
  const double p = params.base_probability_floor();
  if (p >= 1.0) return {0, std::numeric_limits<double>::infinity()};
  return {0, std::sqrt(params.noise_var) * gaussian_cdf_inv(p)};
}

Ball centered_ball_for(const ConcentrationParams& params) {
  params.validate();
  Ball ball;
  ball.center.assign(static_cast<std::size_t>(params.n), 0.0);
  const double p = params.base_probability_floor();
  if (p >= 1.0) {
    ball.radius = std::numeric_limits<double>::infinity();
    return ball;
  }
  boost::math::chi_squared_distribution<double> chi(params.n);
  ball.radius = std::sqrt(params.noise_var * boost::math::quantile(chi, p));
  return ball;
}

std::string_view to_string(Method m) { return m == Method::exact ? "exact" : "monte_carlo"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "unknown";
}

Verdict classify_estimate(double estimate, double std_error, double floor) {
  if (estimate - kGuardBand * std_error >= floor) return Verdict::pass;
  if (estimate + kGuardBand * std_error < floor) return Verdict::fail;
  return Verdict::inconclusive;
}

ConcentrationCheck halfspace_check(const ConcentrationParams& params) {
  return exact_check(params, halfspace_for(params));
}

ConcentrationCheck exact_check(const ConcentrationParams& params, const SetDescriptor& set) {
  params.validate();
  check_dimension(set, params.n);
  const double sigma = std::sqrt(params.noise_var);
  const double d = params.blowup_radius();

  if (const auto* h = std::get_if<Halfspace>(&set)) {
    if (std::isinf(h->threshold)) return exact_result(params, set, 1.0, 1.0, 0.0);
    const double z0 = h->threshold / sigma;
    const double z1 = (h->threshold + d) / sigma;
    return exact_result(params, set, gaussian_cdf(z0), gaussian_cdf(z1), gaussian_tail(z1));
  }
  if (const auto* b = std::get_if<Ball>(&set)) {
    if (std::isinf(b->radius)) return exact_result(params, set, 1.0, 1.0, 0.0);
    const double base = ball_probability(*b, params.n, params.noise_var).first;
    Ball grown = *b;
    grown.radius += d;
    const auto [blow, blow_c] = ball_probability(grown, params.n, params.noise_var);
    return exact_result(params, set, base, blow, blow_c);
  }
  throw DomainError("exact_check: no closed form for a union of balls; use monte_carlo_check");
}

ConcentrationCheck monte_carlo_check(const ConcentrationParams& params, const SetDescriptor& set,
                                     std::uint64_t samples, std::uint64_t seed) {
  params.validate();
  check_dimension(set, params.n);
  if (samples < 1000) throw DomainError("monte_carlo_check: samples must be >= 1000");

  const auto dim = static_cast<std::size_t>(params.n);
  const double sigma = std::sqrt(params.noise_var);
  const double radius = params.blowup_radius();
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;

  struct Counts {
    std::uint64_t inside = 0;
    std::uint64_t blown = 0;
  };
  auto run_block = [&](std::uint64_t block, Counts& counts, std::vector<double>& point) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> normal(0.0, sigma);
    const std::uint64_t begin = block * kBlockSize;
    const std::uint64_t end = std::min(samples, begin + kBlockSize);
    for (std::uint64_t s = begin; s < end; ++s) {
      for (double& x : point) x = normal(gen);
      const double dist = distance_to_set(set, point);
      counts.inside += dist == 0.0 ? 1 : 0;
      counts.blown += dist <= radius ? 1 : 0;
    }
  };

  const std::uint64_t threads =
      std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(blocks, 1));
  std::vector<Counts> partial(threads);
  {
    std::vector<std::jthread> workers;
    for (std::uint64_t t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        std::vector<double> point(dim);
        for (std::uint64_t b = t; b < blocks; b += threads) run_block(b, partial[t], point);
      });
    }
  }
  Counts total;
  for (const Counts& c : partial) {
    total.inside += c.inside;
    total.blown += c.blown;
  }

  const auto m = static_cast<double>(samples);
  ConcentrationCheck c;
  c.params = params;
  c.set = set;
  c.method = Method::monte_carlo;
  c.samples = samples;
  c.seed = seed;
  c.base_prob = static_cast<double>(total.inside) / m;
  c.base_stderr = std::sqrt(c.base_prob * (1.0 - c.base_prob) / m);
  c.blowup_prob = static_cast<double>(total.blown) / m;
  c.blowup_complement = static_cast<double>(samples - total.blown) / m;
  c.blowup_stderr = std::sqrt(c.blowup_prob * c.blowup_complement / m);
  c.floor = params.floor();

  if (c.base_prob + kGuardBand * c.base_stderr < params.base_probability_floor()) {
    throw PreconditionError("estimated set probability " + std::to_string(c.base_prob) +
                            " is more than 3 standard errors below 2^(-n a_n)");
  }
  c.verdict = classify_estimate(c.blowup_prob, c.blowup_stderr, c.floor);
  c.holds = c.verdict == Verdict::pass;
  return c;
}

}  // namespace relaybound
