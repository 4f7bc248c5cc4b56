#include "relaybound/mi_verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "relaybound/errors.hpp"
#include "relaybound/numerics.hpp"

namespace relaybound {

namespace {

// log(e^u + e^v) without overflow; tolerates -inf arguments.
double log_add(double u, double v) {
  if (u == -std::numeric_limits<double>::infinity()) return v;
  if (v == -std::numeric_limits<double>::infinity()) return u;
  const double hi = std::max(u, v);
  return hi + std::log1p(std::exp(std::min(u, v) - hi));
}

double safe_log(double p) {
  return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

class QuantizerModel {
 public:
  explicit QuantizerModel(const QuantizerRelay& q)
      : amp_(std::sqrt(q.power)), var_(q.noise_var), sigma_(std::sqrt(q.noise_var)) {
    // cond_[i][k] = Pr(I = i | X = x_k) with x_0 = +sqrt(P), x_1 = -sqrt(P).
    cond_[1][0] = gaussian_tail((q.threshold - amp_) / sigma_);
    cond_[0][0] = gaussian_cdf((q.threshold - amp_) / sigma_);
    cond_[1][1] = gaussian_tail((q.threshold + amp_) / sigma_);
    cond_[0][1] = gaussian_cdf((q.threshold + amp_) / sigma_);
    for (int i = 0; i < 2; ++i) marginal_[i] = 0.5 * (cond_[i][0] + cond_[i][1]);
  }

  [[nodiscard]] double amplitude() const { return amp_; }
  [[nodiscard]] double sigma() const { return sigma_; }

  [[nodiscard]] double h_i_given_x() const {
    return 0.5 * (binary_entropy(cond_[0][0], cond_[1][0]) +
                  binary_entropy(cond_[0][1], cond_[1][1]));
  }
  [[nodiscard]] double h_i() const { return binary_entropy(marginal_[0], marginal_[1]); }
  [[nodiscard]] double marginal(int i) const { return marginal_[i]; }

  // Log of the Gaussian kernel exp(-(y - m)^2 / 2N) / sqrt(2 pi N).
  [[nodiscard]] double log_kernel(double y, double mean) const {
    const double d = y - mean;
    return -d * d / (2.0 * var_) - 0.5 * std::log(2.0 * std::numbers::pi * var_);
  }

  // log f(y) for the two-component mixture.
  [[nodiscard]] double log_density(double y) const {
    return std::log(0.5) + log_add(log_kernel(y, amp_), log_kernel(y, -amp_));
  }

  // log f(y | I = i) = log sum_k 1/2 Pr(i | x_k) phi(y - x_k) - log Pr(I = i).
  [[nodiscard]] double log_conditional_density(double y, int i) const {
    return std::log(0.5) +
           log_add(log_kernel(y, amp_) + safe_log(cond_[i][0]),
                   log_kernel(y, -amp_) + safe_log(cond_[i][1])) -
           std::log(marginal_[i]);
  }

  // H(I | Y = y): posterior of X is logistic in y, pushed through Pr(I | X).
  [[nodiscard]] double posterior_entropy(double y) const {
    const double z = 2.0 * y * amp_ / var_;
    const double w_plus = 1.0 / (1.0 + std::exp(-z));
    const double w_minus = 1.0 / (1.0 + std::exp(z));
    const double p0 = w_plus * cond_[0][0] + w_minus * cond_[0][1];
    const double p1 = w_plus * cond_[1][0] + w_minus * cond_[1][1];
    const double total = p0 + p1;
    return binary_entropy(p0 / total, p1 / total);
  }

 private:
  double amp_;
  double var_;
  double sigma_;
  std::array<std::array<double, 2>, 2> cond_{};
  std::array<double, 2> marginal_{};
};

constexpr double kRelativeTolerance = 1e-10;
constexpr double kTinyTolerance = 1e-300;

// Integral over the truncated support, split at the mixture modes and 0.
template <class F>
double integrate_support(const QuantizerModel& m, F&& f, double abs_tolerance) {
  const double s = m.amplitude();
  const double edge = s + 8.0 * m.sigma();
  std::array<double, 5> cuts = {-edge, -s, 0.0, s, edge};
  std::sort(cuts.begin(), cuts.end());
  SolverConfig cfg;
  cfg.abs_tolerance = abs_tolerance;
  cfg.max_iterations = 2000;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] > cuts[k]) total += integrate(f, cuts[k], cuts[k + 1], cfg);
  }
  return total;
}

template <class F>
double integrate_support(const QuantizerModel& m, F&& f) {
  return integrate_support(m, f, SolverConfig{}.abs_tolerance);
}

// Tolerance scaled to the integral so tiny nonnegative integrands keep relative accuracy.
template <class F>
double integrate_support_relative(const QuantizerModel& m, F&& f) {
  const double rough = integrate_support(m, f);
  const double tol = std::max(kRelativeTolerance * std::abs(rough), kTinyTolerance);
  return tol < SolverConfig{}.abs_tolerance ? integrate_support(m, f, tol) : rough;
}

}  // namespace

void QuantizerRelay::validate() const {
  if (!(power > 0.0) || !std::isfinite(power)) throw DomainError("quantizer relay: power must be > 0");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw DomainError("quantizer relay: noise_var must be > 0");
  }
  if (!std::isfinite(threshold)) throw DomainError("quantizer relay: threshold must be finite");
}

MIReport evaluate_quantizer_relay(const QuantizerRelay& relay) {
  relay.validate();
  const QuantizerModel model(relay);

  MIReport r;
  r.relay = relay;
  r.a = model.h_i_given_x();
  const double h_i = model.h_i();
  r.i_xi = h_i - r.a;

  r.h_i_given_y = integrate_support_relative(model, [&](double y) {
    return std::exp(model.log_density(y)) * model.posterior_entropy(y);
  });
  r.i_yi = h_i - r.h_i_given_y;
  r.lhs = r.h_i_given_y - r.a;
  r.rhs = r.a + std::sqrt(2.0 * r.a * kLn2) * kLog2E;
  r.holds = r.lhs <= r.rhs + kMiHoldsTolerance;

  r.h_y = integrate_support(model, [&](double y) {
    const double lf = model.log_density(y);
    return -std::exp(lf) * lf * kLog2E;
  });
  r.h_y_given_i = 0.0;
  for (int i = 0; i < 2; ++i) {
    if (model.marginal(i) <= 0.0) continue;
    const double h = integrate_support(model, [&](double y) {
      const double lf = model.log_conditional_density(y, i);
      return -std::exp(lf) * lf * kLog2E;
    });
    r.h_y_given_i += model.marginal(i) * h;
  }
  return r;
}

std::vector<MIReport> sweep_quantizer_relays(std::span<const double> snr_grid,
                                             std::span<const double> threshold_scales) {
  if (snr_grid.empty() || threshold_scales.empty()) {
    throw DomainError("sweep_quantizer_relays: grids must be nonempty");
  }
  std::vector<MIReport> reports;
  reports.reserve(snr_grid.size() * threshold_scales.size());
  for (double snr : snr_grid) {
    for (double scale : threshold_scales) {
      const std::string where =
          " (at snr=" + std::to_string(snr) + ", threshold scale=" + std::to_string(scale) + ")";
      try {
        reports.push_back(evaluate_quantizer_relay({snr, 1.0, scale * std::sqrt(std::max(snr, 0.0))}));
      } catch (const ConvergenceError& e) {
        throw ConvergenceError(e.what() + where);
      } catch (const DomainError& e) {
        throw DomainError(e.what() + where);
      }
    }
  }
  return reports;
}

}  // namespace relaybound
