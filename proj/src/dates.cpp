#include "strucred/dates.hpp"

#include <charconv>
#include <stdexcept>

#include "strucred/errors.hpp"

namespace strucred {

namespace {

unsigned last_day_of_month(std::chrono::year y, std::chrono::month m) {
  using namespace std::chrono;
  return static_cast<unsigned>(year_month_day_last{y, month_day_last{m}}.day());
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw IngestionError("bad date field '" + std::string(s) + "'");
  return v;
}

}  // namespace

Date make_date(int year, unsigned month, unsigned day) {
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                     std::chrono::day{day}};
  if (!ymd.ok()) throw std::invalid_argument("invalid calendar date");
  return sys_days{ymd};
}

Date parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    throw IngestionError("bad ISO date '" + std::string(text) + "'");
  int y = parse_int(text.substr(0, 4));
  int m = parse_int(text.substr(5, 2));
  int d = parse_int(text.substr(8, 2));
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                     std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) throw IngestionError("bad ISO date '" + std::string(text) + "'");
  return sys_days{ymd};
}

std::string format_iso_date(Date d) {
  using namespace std::chrono;
  year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

int days_between(Date from, Date to) { return (to - from).count(); }

double year_fraction(Date from, Date to) {
  if (to < from) throw std::invalid_argument("year_fraction: to < from");
  return days_between(from, to) / 365.0;
}

Date add_months(Date d, int months) {
  using namespace std::chrono;
  year_month_day ymd{d};
  year_month ym = ymd.year() / ymd.month();
  ym += std::chrono::months{months};
  unsigned day = std::min(unsigned(ymd.day()), last_day_of_month(ym.year(), ym.month()));
  return sys_days{year_month_day{ym.year(), ym.month(), std::chrono::day{day}}};
}

Date add_years(Date d, int years) { return add_months(d, 12 * years); }

}  // namespace strucred
