#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tmn::calc {

/// Exact decimal number as a scaled integer: value = units / 10^scale.
/// Keeps subtraction results like 100 - 12.6 = 87.4 free of binary-float
/// drift. Always stored normalized (no trailing fractional zeros).
class Decimal {
 public:
  Decimal() = default;
  static Decimal from_int(std::int64_t value);

  /// Parses "123", "-4.5", "1,234.06". Thousands separators must group
  /// digits in threes. Rejects anything else (notably ranges like "1693-99").
  static std::optional<Decimal> parse(std::string_view text);

  std::int64_t units() const { return units_; }
  int scale() const { return scale_; }

  bool is_integer() const { return scale_ == 0; }
  bool negative() const { return units_ < 0; }

  /// Minimal-digit rendering: "87.4", never "87.40".
  std::string to_string() const;

  Decimal operator-(const Decimal& other) const;
  Decimal abs() const;

  std::strong_ordering operator<=>(const Decimal& other) const;
  bool operator==(const Decimal& other) const;

 private:
  Decimal(std::int64_t units, int scale) : units_(units), scale_(scale) { normalize(); }
  void normalize();

  std::int64_t units_ = 0;
  int scale_ = 0;
};

inline Decimal abs_diff(const Decimal& a, const Decimal& b) { return (a - b).abs(); }

}  // namespace tmn::calc
