#include "strucred/cds_quotes.hpp"

#include "strucred/csv.hpp"
#include "strucred/errors.hpp"

namespace strucred {

CdsQuoteSet CdsQuoteSet::load_csv(const std::filesystem::path& path, Date valuation) {
  CsvReader csv(path, {"maturity_date", "spread_bps", "recovery"});
  CdsQuoteSet set;
  set.valuation = valuation;
  while (auto row = csv.next()) {
    CdsQuote q;
    q.maturity = csv.parse_date((*row)[0]);
    q.spread_bps = csv.parse_double((*row)[1]);
    q.recovery = csv.parse_double((*row)[2]);
    set.quotes.push_back(q);
  }
  if (set.quotes.empty()) throw IngestionError(path.string() + ": no data rows");
  set.validate();
  return set;
}

void CdsQuoteSet::validate() const {
  if (premium_frequency <= 0 || 12 % premium_frequency != 0)
    throw IngestionError("cds quotes: premium frequency must divide 12 months");
  Date prev = valuation;
  for (std::size_t i = 0; i < quotes.size(); ++i) {
    const CdsQuote& q = quotes[i];
    const std::string at = " at quote " + std::to_string(i + 1) + " (" +
                           format_iso_date(q.maturity) + ")";
    if (q.maturity <= prev)
      throw IngestionError("cds quotes: maturities not strictly increasing" + at);
    if (!(q.spread_bps > 0.0)) throw IngestionError("cds quotes: spread not positive" + at);
    if (q.recovery < 0.0 || q.recovery >= 1.0)
      throw IngestionError("cds quotes: recovery outside [0,1)" + at);
    prev = q.maturity;
  }
}

}  // namespace strucred
