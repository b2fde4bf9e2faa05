#pragma once

#include <optional>
#include <string>
#include <vector>

namespace effdemand {

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless flags and counts

  friend bool operator==(const Column&, const Column&) = default;
};

using Cell = std::optional<double>;  // nullopt marks an absent value

/// Named numeric columns over a strictly increasing abscissa (column 0),
/// stored row-major. `status` is either empty or holds one label per row.
struct CurveTable {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> status;

  /// Throws ErrorCode::invalid_parameter when rows are ragged, the abscissa
  /// is absent or not strictly increasing, or status has the wrong length.
  void validate() const;

  friend bool operator==(const CurveTable&, const CurveTable&) = default;
};

}  // namespace effdemand
