#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace strucred {

// Calendar dates are serial-day values; all date arithmetic is plain
// calendar arithmetic, all year fractions are ACT/365F.
using Date = std::chrono::sys_days;

Date make_date(int year, unsigned month, unsigned day);

// Strict ISO-8601 "YYYY-MM-DD". Throws IngestionError on anything else.
Date parse_iso_date(std::string_view text);
std::string format_iso_date(Date d);

int days_between(Date from, Date to);

// ACT/365F. Throws std::invalid_argument if to < from.
double year_fraction(Date from, Date to);

// Shifts by calendar months, clamping to the end of the target month
// (e.g. May 31 minus 3 months -> Feb 28/29).
Date add_months(Date d, int months);
Date add_years(Date d, int years);

}  // namespace strucred
