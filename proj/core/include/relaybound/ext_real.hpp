#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace relaybound {

/// Nonnegative extended real: a finite value >= 0 or a symbolic +infinity.
///
/// Channel SNRs live here so the limit points of the bounds (P/N -> infinity)
/// are represented exactly. Arithmetic that would be indeterminate
/// (infinity minus infinity) or leave the nonnegative half-line throws
/// DomainError instead of producing a NaN.
class ExtReal {
 public:
  constexpr ExtReal() = default;

  /// Accepts finite values >= 0; IEEE +inf maps to the infinity marker.
  /// Throws DomainError for NaN or negative input.
  ExtReal(double value);  // NOLINT(google-explicit-constructor)

  static constexpr ExtReal infinity() { return ExtReal(Tag{}); }

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws DomainError on the infinity marker.
  [[nodiscard]] double value() const;

  /// Finite value, or IEEE +inf for the marker. For output only.
  [[nodiscard]] double to_double() const;

  friend bool operator==(const ExtReal& a, const ExtReal& b);
  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b);

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);

  /// a - b. Throws DomainError for inf - inf, finite - inf, or a negative
  /// finite result.
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b);

 private:
  struct Tag {};
  constexpr explicit ExtReal(Tag) : infinite_(true) {}

  double value_ = 0.0;
  bool infinite_ = false;
};

/// 0.5 * log2(1 + x), with log(1 + inf) = inf.
ExtReal half_log2_1p(const ExtReal& x);

/// "inf" for the marker, otherwise 12 significant digits.
std::string to_string(const ExtReal& x);

/// Parses a nonnegative real or "inf"/"infinity" (case-insensitive).
/// Throws DomainError on malformed or negative input.
ExtReal parse_ext_real(std::string_view text);

}  // namespace relaybound
