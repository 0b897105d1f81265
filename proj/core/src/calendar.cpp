#include "lpqb/calendar.hpp"

#include <cstdio>

#include "lpqb/errors.hpp"

namespace lpqb {

namespace chr = std::chrono;

Date parse_date(const std::string& text) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3)
    throw DataError("parse_date: unparseable date '" + text + "' (expected YYYY-MM-DD)");
  const chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                                chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok())
    throw DataError("parse_date: invalid calendar date '" + text + "'");
  return chr::sys_days{ymd};
}

std::string format_date(Date d) {
  const chr::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

int day_of_year(Date d) {
  const chr::year_month_day ymd{d};
  const Date jan1{chr::year_month_day{ymd.year(), chr::month{1}, chr::day{1}}};
  return static_cast<int>((d - jan1).count()) + 1;
}

int days_in_year(Date d) {
  const chr::year_month_day ymd{d};
  return ymd.year().is_leap() ? 366 : 365;
}

int weekday_index(Date d) {
  // chrono encodes Sunday as 0; shift so Monday is 0.
  const unsigned sunday0 = chr::weekday{d}.c_encoding();
  return static_cast<int>((sunday0 + 6) % 7);
}

double year_position(Date d) {
  return static_cast<double>(day_of_year(d) - 1) / static_cast<double>(days_in_year(d));
}

void require_daily_spacing(const std::vector<Date>& dates) {
  for (std::size_t i = 1; i < dates.size(); ++i) {
    const auto gap = (dates[i] - dates[i - 1]).count();
    if (gap != 1)
      throw DataError("dates: expected one-day spacing, found gap of " + std::to_string(gap) +
                      " day(s) before " + format_date(dates[i]));
  }
}

}  // namespace lpqb
