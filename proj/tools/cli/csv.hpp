#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dirac2d::cli {

// 12 significant digits, '.' separator, shortest of fixed/scientific.
std::string format_number(double value, int digits = 12);
std::string format_cell(const std::optional<double>& value);

struct CsvTable {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string write_csv(const CsvTable& table);

// Lines starting with '#' before the header are comments. Throws
// std::runtime_error on ragged rows or an unterminated quote.
CsvTable parse_csv(std::string_view text);

// Empty cell -> nullopt. Throws std::runtime_error on junk.
std::optional<double> parse_cell(std::string_view cell);

}  // namespace dirac2d::cli
