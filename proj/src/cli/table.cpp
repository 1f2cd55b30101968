#include "casimir/cli/table.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

namespace casimir::cli {

namespace {

struct CellText {
  std::string operator()(std::monostate) const { return {}; }
  std::string operator()(double x) const { return format_number(x); }
  std::string operator()(std::int64_t x) const { return std::to_string(x); }
  std::string operator()(bool x) const { return x ? "true" : "false"; }
  std::string operator()(const std::string& s) const { return s; }
};

struct CellJson {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(double x) const {
    if (!std::isfinite(x)) return nullptr;
    return x == 0.0 ? 0.0 : x;
  }
  nlohmann::ordered_json operator()(std::int64_t x) const { return x; }
  nlohmann::ordered_json operator()(bool x) const { return x; }
  nlohmann::ordered_json operator()(const std::string& s) const { return s; }
};

} // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& os, const Table& table) {
  for (const auto& [key, value] : table.meta) os << "# " << key << ": " << value << '\n';
  for (const auto& [key, value] : table.config) os << "# config " << key << '=' << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << csv_field(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_field(std::visit(CellText{}, row[i]));
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) meta[key] = value;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.config) config[key] = value;
  meta["config"] = std::move(config);
  doc["meta"] = std::move(meta);
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i)
      rec[table.columns[i]] = std::visit(CellJson{}, row[i]);
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  os << doc.dump(2) << '\n';
}

} // namespace casimir::cli
