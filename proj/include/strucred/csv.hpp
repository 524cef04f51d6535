#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "strucred/dates.hpp"

namespace strucred {

// Minimal reader for the comma-separated inputs this library consumes:
// plain fields, no quoting, one header row. Errors name file and row.
class CsvReader {
 public:
  CsvReader(const std::filesystem::path& path, const std::vector<std::string>& expected_header);

  // Next data row, or nullopt at end of file. Blank lines are skipped.
  std::optional<std::vector<std::string>> next();

  double parse_double(const std::string& field) const;
  Date parse_date(const std::string& field) const;
  std::size_t row_number() const { return row_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t n_cols_ = 0;
  std::size_t row_ = 0;  // 1-based, header = 1

  [[noreturn]] void fail(const std::string& what) const;
};

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace strucred
