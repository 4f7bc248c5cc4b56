#include "relaybound/ext_real.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "relaybound/errors.hpp"

namespace relaybound {

ExtReal::ExtReal(double value) {
  if (std::isnan(value)) throw DomainError("ExtReal: NaN is not an extended real");
  if (value < 0.0) throw DomainError("ExtReal: value must be nonnegative");
  if (std::isinf(value)) {
    infinite_ = true;
  } else {
    value_ = value;
  }
}

double ExtReal::value() const {
  if (infinite_) throw DomainError("ExtReal: infinite value has no finite representation");
  return value_;
}

double ExtReal::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

bool operator==(const ExtReal& a, const ExtReal& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
  if (a.infinite_) return std::partial_ordering::greater;
  if (b.infinite_) return std::partial_ordering::less;
  return a.value_ <=> b.value_;
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.infinite_ || b.infinite_) return ExtReal::infinity();
  return ExtReal(a.value_ + b.value_);
}

ExtReal operator-(const ExtReal& a, const ExtReal& b) {
  if (a.infinite_ && b.infinite_) throw DomainError("ExtReal: inf - inf is indeterminate");
  if (b.infinite_) throw DomainError("ExtReal: finite - inf leaves the nonnegative reals");
  if (a.infinite_) return ExtReal::infinity();
  const double d = a.value_ - b.value_;
  if (d < 0.0) throw DomainError("ExtReal: difference is negative");
  return ExtReal(d);
}

ExtReal half_log2_1p(const ExtReal& x) {
  if (x.is_infinite()) return ExtReal::infinity();
  return ExtReal(0.5 * std::log1p(x.value()) * std::numbers::log2e);
}

std::string to_string(const ExtReal& x) {
  if (x.is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x.value());
  return buf;
}

ExtReal parse_ext_real(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "inf" || lowered == "+inf" || lowered == "infinity") return ExtReal::infinity();

  double value = 0.0;
  const char* first = lowered.data();
  const char* last = first + lowered.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw DomainError("cannot parse '" + std::string(text) + "' as a nonnegative real or 'inf'");
  }
  if (!std::isfinite(value)) throw DomainError("use 'inf' for an infinite value");
  return ExtReal(value);
}

}  // namespace relaybound
