#include "tmn/decimal.hpp"

#include <cctype>
#include <cstdlib>

#include "tmn/errors.hpp"

namespace tmn::calc {
namespace {

constexpr int kMaxScale = 12;

using Wide = __int128;

std::int64_t pow10(int exp) {
  std::int64_t out = 1;
  while (exp-- > 0) out *= 10;
  return out;
}

// Aligns both operands to a common scale.
void align(const Decimal& a, const Decimal& b, Wide& ua, Wide& ub, int& scale) {
  scale = std::max(a.scale(), b.scale());
  ua = static_cast<Wide>(a.units()) * pow10(scale - a.scale());
  ub = static_cast<Wide>(b.units()) * pow10(scale - b.scale());
}

}  // namespace

Decimal Decimal::from_int(std::int64_t value) { return Decimal(value, 0); }

std::optional<Decimal> Decimal::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }

  std::string digits;
  bool saw_comma = false;
  std::size_t group = 0;  // digits since the last comma
  while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == ',')) {
    if (text[i] == ',') {
      if (digits.empty() || (saw_comma && group != 3) || group == 0) return std::nullopt;
      saw_comma = true;
      group = 0;
    } else {
      digits += text[i];
      ++group;
      if (saw_comma && group > 3) return std::nullopt;
    }
    ++i;
  }
  if (saw_comma && group != 3) return std::nullopt;
  if (digits.empty()) return std::nullopt;

  int scale = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t frac_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i];
      ++i;
    }
    scale = static_cast<int>(i - frac_start);
    if (scale == 0 || scale > kMaxScale) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;
  if (digits.size() > 18) return std::nullopt;  // keeps units in int64 range

  std::int64_t units = 0;
  for (char c : digits) units = units * 10 + (c - '0');
  if (negative) units = -units;
  return Decimal(units, scale);
}

void Decimal::normalize() {
  while (scale_ > 0 && units_ % 10 == 0) {
    units_ /= 10;
    --scale_;
  }
}

std::string Decimal::to_string() const {
  std::int64_t magnitude = units_ < 0 ? -units_ : units_;
  std::string digits = std::to_string(magnitude);
  if (scale_ > 0) {
    if (static_cast<int>(digits.size()) <= scale_) {
      digits.insert(0, scale_ + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - scale_, 1, '.');
  }
  if (units_ < 0) digits.insert(0, 1, '-');
  return digits;
}

Decimal Decimal::operator-(const Decimal& other) const {
  Wide ua, ub;
  int scale;
  align(*this, other, ua, ub, scale);
  Wide result = ua - ub;
  // Inputs are bounded well below 10^18, so the aligned difference fits.
  return Decimal(static_cast<std::int64_t>(result), scale);
}

Decimal Decimal::abs() const {
  return units_ < 0 ? Decimal(-units_, scale_) : *this;
}

std::strong_ordering Decimal::operator<=>(const Decimal& other) const {
  Wide ua, ub;
  int scale;
  align(*this, other, ua, ub, scale);
  if (ua < ub) return std::strong_ordering::less;
  if (ua > ub) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool Decimal::operator==(const Decimal& other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

}  // namespace tmn::calc
