#pragma once

#include <filesystem>
#include <vector>

#include "strucred/dates.hpp"

namespace strucred {

struct CdsQuote {
  Date maturity;
  double spread_bps = 0.0;  // running spread R in basis points
  double recovery = 0.0;    // REC in [0,1)

  double spread() const { return spread_bps * 1e-4; }
  double lgd() const { return 1.0 - recovery; }
};

// A dated strip of CDS quotes on one name. Maturities strictly increasing,
// spreads positive, premium leg paid `premium_frequency` times a year.
struct CdsQuoteSet {
  Date valuation;
  std::vector<CdsQuote> quotes;
  int premium_frequency = 4;

  // CSV `maturity_date,spread_bps,recovery` with header; valuation date is
  // external (the quotes file carries maturities only).
  static CdsQuoteSet load_csv(const std::filesystem::path& path, Date valuation);

  void validate() const;
};

}  // namespace strucred
