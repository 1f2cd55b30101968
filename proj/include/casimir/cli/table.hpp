#pragma once

// Tabular output shared by every subcommand: one header row, flat records,
// metadata carried as `#` comment lines (CSV) or a `meta` object (JSON).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace casimir::cli {

/// Empty, real, integer, boolean or text cell.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Ordered key/value metadata (tool, command, units, ...).
  std::vector<std::pair<std::string, std::string>> meta;
  /// Normalized run configuration, one key=value entry per option.
  std::vector<std::pair<std::string, std::string>> config;
};

/// Shortest decimal string that parses back to exactly x.
std::string format_number(double x);

/// RFC 4180 field quoting: fields with a comma, quote, CR or LF are quoted.
std::string csv_field(const std::string& text);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table);

} // namespace casimir::cli
