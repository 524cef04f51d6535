#include "strucred/csv.hpp"

#include <charconv>

#include "strucred/errors.hpp"

namespace strucred {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    std::string field = line.substr(start, pos == std::string::npos ? pos : pos - start);
    // trim ASCII whitespace and a trailing CR
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ' || field.back() == '\t'))
      field.pop_back();
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
      field.erase(field.begin());
    out.push_back(std::move(field));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

CsvReader::CsvReader(const std::filesystem::path& path,
                     const std::vector<std::string>& expected_header)
    : path_(path), in_(path) {
  if (!in_) throw IngestionError("cannot open " + path_.string());
  std::string line;
  if (!std::getline(in_, line)) fail("empty file");
  ++row_;
  auto header = split_csv_line(line);
  if (header != expected_header) {
    std::string want;
    for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
    fail("expected header `" + want + "`, got `" + line + "`");
  }
  n_cols_ = expected_header.size();
}

std::optional<std::vector<std::string>> CsvReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++row_;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != n_cols_)
      fail("expected " + std::to_string(n_cols_) + " fields, got " +
           std::to_string(fields.size()));
    return fields;
  }
  return std::nullopt;
}

double CsvReader::parse_double(const std::string& field) const {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    fail("bad numeric field '" + field + "'");
  return v;
}

Date CsvReader::parse_date(const std::string& field) const {
  try {
    return parse_iso_date(field);
  } catch (const IngestionError&) {
    fail("bad date field '" + field + "'");
  }
}

void CsvReader::fail(const std::string& what) const {
  throw IngestionError(path_.string() + ":" + std::to_string(row_) + ": " + what);
}

}  // namespace strucred
