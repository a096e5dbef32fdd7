#pragma once

#include <string>
#include <vector>

namespace ocqsl::harness {

/// Numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Throws ConfigError when the column is absent.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

/// 12 significant digits; non-finite values print as nan / inf / -inf.
std::string format_number(double value);

std::string to_csv(const Table& table);
void write_csv(const std::string& path, const Table& table);

/// Reads a header row and numeric rows. Throws ConfigError on ragged rows or
/// unparsable cells.
Table parse_csv(const std::string& text);
Table read_csv(const std::string& path);

}  // namespace ocqsl::harness
