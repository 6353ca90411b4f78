#include <doctest.h>

#include <cstdint>
#include <random>

#include "tmn/dates.hpp"

using namespace tmn::calc;

namespace {

// ---- independent calendar oracles (no shared code with the library) --------

bool oracle_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int oracle_dim(int y, int m) {
  static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && oracle_leap(y)) return 29;
  return lengths[m - 1];
}

struct Ymd {
  int y, m, d;
};

bool ymd_le(const Ymd& a, const Ymd& b) {
  if (a.y != b.y) return a.y < b.y;
  if (a.m != b.m) return a.m < b.m;
  return a.d <= b.d;
}

// day-stepping: walk one day at a time from the earlier date to the later one
std::int64_t oracle_day_diff(Ymd a, Ymd b) {
  if (!ymd_le(a, b)) std::swap(a, b);
  std::int64_t steps = 0;
  while (a.y != b.y || a.m != b.m || a.d != b.d) {
    ++a.d;
    if (a.d > oracle_dim(a.y, a.m)) {
      a.d = 1;
      ++a.m;
      if (a.m > 12) {
        a.m = 1;
        ++a.y;
      }
    }
    ++steps;
  }
  return steps;
}

// month-stepping: largest k such that (earlier advanced by k whole months,
// day clamped to the target month) does not pass the later date
Ymd oracle_shift_months(Ymd a, std::int64_t k) {
  std::int64_t linear = static_cast<std::int64_t>(a.y) * 12 + (a.m - 1) + k;
  Ymd out;
  out.y = static_cast<int>(linear / 12);
  out.m = static_cast<int>(linear % 12) + 1;
  out.d = std::min(a.d, oracle_dim(out.y, out.m));
  return out;
}

std::int64_t oracle_month_diff(Ymd a, Ymd b) {
  if (!ymd_le(a, b)) std::swap(a, b);
  std::int64_t k = 0;
  while (ymd_le(oracle_shift_months(a, k + 1), b)) ++k;
  return k;
}

std::int64_t oracle_year_diff(Ymd a, Ymd b) {
  if (!ymd_le(a, b)) std::swap(a, b);
  std::int64_t k = 0;
  while (true) {
    Ymd shifted{a.y + static_cast<int>(k + 1), a.m,
                std::min(a.d, oracle_dim(a.y + static_cast<int>(k + 1), a.m))};
    if (!ymd_le(shifted, b)) break;
    ++k;
  }
  return k;
}

CivilDate as_date(const Ymd& x) { return CivilDate{x.y, x.m, x.d}; }

}  // namespace

TEST_CASE("day difference matches the day-stepping oracle on known dates") {
  CHECK(diff_days(CivilDate{1706, 1, 8}, CivilDate{1705, 12, 25}) == 14);
  CHECK(oracle_day_diff(Ymd{1706, 1, 8}, Ymd{1705, 12, 25}) == 14);
  CHECK(diff_days(CivilDate{2000, 2, 28}, CivilDate{2000, 3, 1}) == 2);   // leap year
  CHECK(diff_days(CivilDate{1900, 2, 28}, CivilDate{1900, 3, 1}) == 1);   // century, not leap
  CHECK(diff_days(CivilDate{2000, 1, 1}, CivilDate{2000, 1, 1}) == 0);
}

TEST_CASE("month and year differences count whole completed units") {
  // 25 Dec 1705 -> 8 Jan 1706 is only 14 days: zero whole months
  CHECK(completed_months_between(CivilDate{1705, 12, 25}, CivilDate{1706, 1, 8}) == 0);
  CHECK(completed_months_between(CivilDate{2002, 1, 1}, CivilDate{2003, 1, 1}) == 12);
  CHECK(completed_years_between(CivilDate{2002, 1, 1}, CivilDate{2003, 1, 1}) == 1);
  // clamped: Jan 31 + 1 month = Feb 28, so Jan 31 -> Feb 28 is one whole month
  CHECK(completed_months_between(CivilDate{2001, 1, 31}, CivilDate{2001, 2, 28}) == 1);
  CHECK(completed_months_between(CivilDate{2001, 1, 31}, CivilDate{2001, 3, 1}) == 1);
  CHECK(completed_years_between(CivilDate{2000, 2, 29}, CivilDate{2001, 2, 28}) == 1);
  CHECK(completed_years_between(CivilDate{2000, 2, 29}, CivilDate{2001, 2, 27}) == 0);
}

TEST_CASE("seeded random date pairs agree with stepping oracles") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> year(1500, 2100);
  std::uniform_int_distribution<int> month(1, 12);

  auto random_date = [&]() {
    Ymd out;
    out.y = year(rng);
    out.m = month(rng);
    std::uniform_int_distribution<int> day(1, oracle_dim(out.y, out.m));
    out.d = day(rng);
    return out;
  };

  for (int i = 0; i < 1000; ++i) {
    Ymd a = random_date();
    Ymd b = random_date();
    CAPTURE(a.y);
    CAPTURE(a.m);
    CAPTURE(a.d);
    CAPTURE(b.y);
    CAPTURE(b.m);
    CAPTURE(b.d);
    REQUIRE(diff_days(as_date(a), as_date(b)) == oracle_day_diff(a, b));
    REQUIRE(completed_months_between(as_date(a), as_date(b)) == oracle_month_diff(a, b));
    REQUIRE(completed_years_between(as_date(a), as_date(b)) == oracle_year_diff(a, b));
  }
}

TEST_CASE("date grammar accepts the four mention forms") {
  auto full = parse_date("8 January 1706");
  REQUIRE(full.has_value());
  CHECK(full->year == 1706);
  CHECK(full->month == 1);
  CHECK(full->day == 8);
  CHECK_FALSE(full->day_imputed);

  auto us_style = parse_date("January 8, 1706");
  REQUIRE(us_style.has_value());
  CHECK(*us_style == *full);

  auto month_year = parse_date("December 1705");
  REQUIRE(month_year.has_value());
  CHECK(month_year->year == 1705);
  CHECK(month_year->month == 12);
  CHECK(month_year->day == 1);
  CHECK(month_year->day_imputed);
  CHECK_FALSE(month_year->month_imputed);

  auto bare = parse_date("1876");
  REQUIRE(bare.has_value());
  CHECK(bare->year == 1876);
  CHECK(bare->month_imputed);
  CHECK(bare->day_imputed);

  CHECK(parse_date("Janvember 3, 1900") == std::nullopt);
  CHECK(parse_date("1693-99") == std::nullopt);
  CHECK(parse_date("32 January 1900") == std::nullopt);
  CHECK(parse_date("29 February 1900") == std::nullopt);
  CHECK(parse_date("29 February 2000").has_value());
  CHECK(parse_date("123") == std::nullopt);        // years are four digits
  CHECK(parse_date("January 8") == std::nullopt);  // no year
  CHECK(parse_date("12.6") == std::nullopt);
}

TEST_CASE("render_date inverts parse_date including imputation") {
  for (const char* mention : {"8 January 1706", "December 1705", "1876"}) {
    auto date = parse_date(mention);
    REQUIRE(date.has_value());
    CHECK(render_date(*date) == mention);
  }
  // the comma form renders back in day-first form
  CHECK(render_date(*parse_date("January 8, 1706")) == "8 January 1706");
}
