#include "tmn/dates.hpp"

#include <array>
#include <cctype>
#include <vector>

namespace tmn::calc {
namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_spaces() {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  }
  bool done() const { return pos == text.size(); }
};

std::optional<int> read_number(Cursor& c, std::size_t max_digits) {
  std::size_t start = c.pos;
  int value = 0;
  while (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
    value = value * 10 + (c.text[c.pos] - '0');
    ++c.pos;
  }
  std::size_t len = c.pos - start;
  if (len == 0 || len > max_digits) return std::nullopt;
  return value;
}

std::optional<int> read_month(Cursor& c) {
  std::size_t start = c.pos;
  while (c.pos < c.text.size() && std::isalpha(static_cast<unsigned char>(c.text[c.pos]))) ++c.pos;
  if (c.pos == start) return std::nullopt;
  return month_from_name(c.text.substr(start, c.pos - start));
}

}  // namespace

bool is_leap_year(int year) {
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return lengths[month - 1];
}

bool valid_date(int year, int month, int day) {
  return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

std::int64_t days_from_civil(const CivilDate& date) {
  // Shift so the year starts in March, making leap days trail the year.
  std::int64_t y = date.year;
  const int m = date.month;
  const int d = date.day;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

int compare_dates(const CivilDate& a, const CivilDate& b) {
  if (a.year != b.year) return a.year < b.year ? -1 : 1;
  if (a.month != b.month) return a.month < b.month ? -1 : 1;
  if (a.day != b.day) return a.day < b.day ? -1 : 1;
  return 0;
}

CivilDate add_months_clamped(const CivilDate& date, std::int64_t months) {
  std::int64_t linear = static_cast<std::int64_t>(date.year) * 12 + (date.month - 1) + months;
  CivilDate out;
  out.year = static_cast<int>(linear >= 0 ? linear / 12 : (linear - 11) / 12);
  out.month = static_cast<int>(linear - static_cast<std::int64_t>(out.year) * 12) + 1;
  out.day = std::min(date.day, days_in_month(out.year, out.month));
  return out;
}

std::int64_t diff_days(const CivilDate& a, const CivilDate& b) {
  std::int64_t diff = days_from_civil(a) - days_from_civil(b);
  return diff < 0 ? -diff : diff;
}

std::int64_t completed_months_between(const CivilDate& a, const CivilDate& b) {
  const CivilDate& earlier = compare_dates(a, b) <= 0 ? a : b;
  const CivilDate& later = compare_dates(a, b) <= 0 ? b : a;
  std::int64_t k = (static_cast<std::int64_t>(later.year) - earlier.year) * 12 +
                   (later.month - earlier.month);
  if (k > 0 && compare_dates(add_months_clamped(earlier, k), later) > 0) --k;
  return k;
}

std::int64_t completed_years_between(const CivilDate& a, const CivilDate& b) {
  return completed_months_between(a, b) / 12;
}

std::optional<CivilDate> parse_date(std::string_view text) {
  Cursor c{text};
  c.skip_spaces();
  if (c.done()) return std::nullopt;

  if (std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
    std::size_t digits_start = c.pos;
    auto first = read_number(c, 4);
    if (!first) return std::nullopt;
    std::size_t digit_count = c.pos - digits_start;
    c.skip_spaces();
    if (c.done()) {
      // bare year
      if (digit_count != 4) return std::nullopt;
      return CivilDate{*first, 1, 1, true, true};
    }
    // "<day> <MonthName> <year>"
    auto month = read_month(c);
    if (!month) return std::nullopt;
    c.skip_spaces();
    auto year = read_number(c, 4);
    c.skip_spaces();
    if (!year || !c.done()) return std::nullopt;
    if (*year < 1000 || !valid_date(*year, *month, *first)) return std::nullopt;
    return CivilDate{*year, *month, *first, false, false};
  }

  // "<MonthName> <day>, <year>" | "<MonthName> <year>"
  auto month = read_month(c);
  if (!month) return std::nullopt;
  c.skip_spaces();
  auto first = read_number(c, 4);
  if (!first) return std::nullopt;
  c.skip_spaces();
  if (c.done()) {
    if (*first < 1000) return std::nullopt;  // "January 8" is not a date mention
    return CivilDate{*first, *month, 1, false, true};
  }
  if (c.text[c.pos] != ',') return std::nullopt;
  ++c.pos;
  c.skip_spaces();
  auto year = read_number(c, 4);
  c.skip_spaces();
  if (!year || !c.done()) return std::nullopt;
  if (*year < 1000 || !valid_date(*year, *month, *first)) return std::nullopt;
  return CivilDate{*year, *month, *first, false, false};
}

std::string render_date(const CivilDate& date) {
  std::string year = std::to_string(date.year);
  if (date.month_imputed) return year;
  if (date.day_imputed) return std::string(month_name(date.month)) + " " + year;
  return std::to_string(date.day) + " " + std::string(month_name(date.month)) + " " + year;
}

std::optional<int> month_from_name(std::string_view name) {
  std::string low = lower_ascii(name);
  for (int m = 0; m < 12; ++m) {
    if (low == lower_ascii(kMonthNames[m])) return m + 1;
  }
  return std::nullopt;
}

std::string_view month_name(int month) { return kMonthNames[month - 1]; }

}  // namespace tmn::calc
