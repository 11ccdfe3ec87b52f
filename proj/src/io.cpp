#include "qrod/io.hpp"

#include <cmath>
#include <cstdio>

#include "qrod/errors.hpp"

namespace qrod::io {

namespace {

void check_precision(int precision) {
  if (precision < kMinPrecision || precision > kMaxPrecision) {
    throw InvalidParameter("precision must lie in [3, 15], got " + std::to_string(precision));
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c, int precision) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d, precision);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return csv_escape(std::get<std::string>(c));
}

nlohmann::ordered_json cell_json(const Cell& c, int precision) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    // Round-trip through the formatted text so JSON holds the CSV value exactly.
    return std::stod(format_number(*d, precision));
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw InvalidParameter("table '" + name + "': row has " + std::to_string(row.size()) + " cells, header has " +
                           std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_number(double v, int precision) {
  check_precision(precision);
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string to_csv(const std::vector<Table>& tables, int precision) {
  check_precision(precision);
  std::string out;
  const bool many = tables.size() > 1;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const Table& tab = tables[t];
    if (t > 0) out += '\n';
    if (many) out += "# " + tab.name + '\n';
    for (std::size_t c = 0; c < tab.columns.size(); ++c) out += (c ? "," : "") + csv_escape(tab.columns[c]);
    out += '\n';
    for (const auto& row : tab.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + cell_text(row[c], precision);
      out += '\n';
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const nlohmann::ordered_json& config, const std::vector<Table>& tables, int precision) {
  check_precision(precision);
  nlohmann::ordered_json doc;
  doc["config"] = config;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  for (const Table& tab : tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : tab.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < row.size(); ++c) obj[tab.columns[c]] = cell_json(row[c], precision);
      rows.push_back(std::move(obj));
    }
    results[tab.name] = std::move(rows);
  }
  doc["results"] = std::move(results);
  doc["provenance"] = {{"version", std::string(kVersion)}};
  return doc;
}

std::string render(const nlohmann::ordered_json& config, const std::vector<Table>& tables, std::string_view format,
                   int precision) {
  if (format == "csv") return to_csv(tables, precision);
  if (format == "json") return to_json(config, tables, precision).dump(2) + '\n';
  throw InvalidParameter("unknown output format '" + std::string(format) + "' (expected json or csv)");
}

}  // namespace qrod::io
