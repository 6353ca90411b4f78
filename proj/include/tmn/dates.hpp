#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tmn::calc {

/// Proleptic-Gregorian calendar date. Partial mentions impute day 1 and/or
/// January, with flags recording the imputation so rendering can reproduce
/// the original precision.
struct CivilDate {
  int year = 1;
  int month = 1;  // 1-12
  int day = 1;    // 1-31
  bool month_imputed = false;
  bool day_imputed = false;

  bool operator==(const CivilDate&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool valid_date(int year, int month, int day);

/// Serial day count (days since 1970-01-01, negative before).
std::int64_t days_from_civil(const CivilDate& date);

/// Chronological comparison on (year, month, day); imputation flags ignored.
int compare_dates(const CivilDate& a, const CivilDate& b);

/// Calendar shift by whole months from the original date, clamping the day
/// to the target month's length (Jan 31 + 1 month = Feb 28/29).
CivilDate add_months_clamped(const CivilDate& date, std::int64_t months);

std::int64_t diff_days(const CivilDate& a, const CivilDate& b);

/// Whole completed months between the two dates (order-insensitive): the
/// largest k with earlier + k months <= later under day clamping.
std::int64_t completed_months_between(const CivilDate& a, const CivilDate& b);

/// Whole completed years, i.e. completed months / 12.
std::int64_t completed_years_between(const CivilDate& a, const CivilDate& b);

/// Accepted mention grammar, matched case-insensitively with full English
/// month names: "8 January 1706", "January 8, 1706", "January 1706", "1706".
/// Years are four digits. Anything else is not a date.
std::optional<CivilDate> parse_date(std::string_view text);

/// Inverse of parse_date with respect to the imputation flags.
std::string render_date(const CivilDate& date);

std::optional<int> month_from_name(std::string_view name);
std::string_view month_name(int month);

}  // namespace tmn::calc
