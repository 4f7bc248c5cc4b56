#include "relaybound/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "relaybound/errors.hpp"

namespace relaybound {

void SolverConfig::validate() const {
  if (!(abs_tolerance > 0.0)) throw DomainError("SolverConfig: abs_tolerance must be > 0");
  if (max_iterations < 1) throw DomainError("SolverConfig: max_iterations must be >= 1");
}

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double gaussian_pdf(double x) {
  constexpr double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double gaussian_cdf_inv(double p, const SolverConfig& cfg) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("gaussian_cdf_inv: p must lie in (0, 1)");
  // Compare in whichever tail keeps full relative precision.
  if (p <= 0.5) return bisect([p](double x) { return gaussian_cdf(x) - p; }, -40.0, 0.0, cfg);
  const double q = 1.0 - p;
  return bisect([q](double x) { return q - gaussian_tail(x); }, 0.0, 40.0, cfg);
}

Bracket bisect_bracket(const std::function<double(double)>& f, double lo, double hi,
                       const SolverConfig& cfg) {
  cfg.validate();
  if (!(lo <= hi)) throw DomainError("bisect: lo must not exceed hi");
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (std::isnan(f_lo) || std::isnan(f_hi)) throw DomainError("bisect: function returned NaN");
  if (f_lo == 0.0) return {lo, lo};
  if (f_hi == 0.0) return {hi, hi};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NoBracketError("bisect: f(lo) and f(hi) have the same sign");
  }

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= cfg.abs_tolerance || mid <= lo || mid >= hi) return {lo, hi};
    const double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, mid};
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo <= cfg.abs_tolerance) return {lo, hi};
  throw ConvergenceError("bisect: no convergence after " + std::to_string(cfg.max_iterations) +
                         " iterations");
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              const SolverConfig& cfg) {
  const Bracket b = bisect_bracket(f, lo, hi, cfg);
  return b.lo + 0.5 * (b.hi - b.lo);
}

namespace {

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// q is the smaller mass; log1p keeps the (1 - q) term when q is tiny.
double binary_entropy_small(double q) {
  if (q <= 0.0) return 0.0;
  return plogp(q) - (1.0 - q) * std::log1p(-q) * kLog2E;
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy: p must lie in [0, 1]");
  return binary_entropy_small(std::min(p, 1.0 - p));
}

double binary_entropy(double p0, double p1) {
  if (!(p0 >= 0.0 && p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > 1e-9) {
    throw DomainError("binary_entropy: masses must be nonnegative and sum to 1");
  }
  return binary_entropy_small(std::min(p0, p1));
}

namespace {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (positive half, centre last).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_centre = f(centre);
  double kronrod = f_centre * kWgk[7];
  double gauss = f_centre * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod)) throw ConvergenceError("integrate: integrand is not finite");
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const SolverConfig& cfg) {
  cfg.validate();
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("integrate: need finite lo < hi");
  }

  std::priority_queue<Panel> panels;
  Panel whole = gauss_kronrod(f, lo, hi);
  double total = whole.value;
  double error = whole.error;
  panels.push(whole);

  int splits = 0;
  while (error > cfg.abs_tolerance) {
    if (splits >= cfg.max_iterations) {
      throw ConvergenceError("integrate: error estimate " + std::to_string(error) +
                             " above tolerance after " + std::to_string(splits) + " splits");
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = gauss_kronrod(f, worst.lo, mid);
    const Panel right = gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++splits;
  }

  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    panels.pop();
  }
  return total;
}

}  // namespace relaybound
