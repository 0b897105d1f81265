#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace lpqb {

using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date "YYYY-MM-DD".
Date parse_date(const std::string& text);

std::string format_date(Date d);

/// 1-based day of year (Jan 1 -> 1).
int day_of_year(Date d);

/// 365 or 366.
int days_in_year(Date d);

/// 0 = Monday ... 6 = Sunday.
int weekday_index(Date d);

/// Normalized within-year position s = (day_of_year - 1) / days_in_year,
/// in [0, 1). Leap years use a 366-day denominator.
double year_position(Date d);

/// Validates strictly increasing dates with exact one-day spacing.
/// Throws DataError naming the first offending date otherwise.
void require_daily_spacing(const std::vector<Date>& dates);

}  // namespace lpqb
