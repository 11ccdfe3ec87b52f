#pragma once

// Tabular results and their CSV / JSON renderings. Every number passes through
// format_number, so the two formats carry the same decimal values.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qrod::io {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr int kMinPrecision = 3;
inline constexpr int kMaxPrecision = 15;

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws InvalidParameter when the row width differs from the header.
  void add_row(std::vector<Cell> row);
};

/// %.{precision}g with correct rounding; "nan", "inf", "-inf" for non-finite values.
/// Throws InvalidParameter for precision outside [3, 15].
[[nodiscard]] std::string format_number(double v, int precision);

/// Header row then data rows. Several tables are separated by a blank line and each
/// is preceded by a "# name" line.
[[nodiscard]] std::string to_csv(const std::vector<Table>& tables, int precision);

/// {"config": ..., "results": {name: [row objects]}, "provenance": {"version": ...}}.
/// Non-finite numbers become null.
[[nodiscard]] nlohmann::ordered_json to_json(const nlohmann::ordered_json& config, const std::vector<Table>& tables,
                                             int precision);

[[nodiscard]] std::string render(const nlohmann::ordered_json& config, const std::vector<Table>& tables,
                                 std::string_view format, int precision);

}  // namespace qrod::io
