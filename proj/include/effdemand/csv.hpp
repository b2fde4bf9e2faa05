#pragma once

#include <string>
#include <string_view>

#include "effdemand/curve_table.hpp"

namespace effdemand {

/// 17 significant digits, '.' decimal point, shortest exponent form where
/// %g would use one. Round-trips every finite double.
std::string format_number(double value);

/// RFC 4180 style: header "name (unit)" per column plus a trailing "status"
/// column when present, LF line endings, empty fields for absent cells.
std::string emit_csv(const CurveTable& table);

/// Inverse of emit_csv. Throws ErrorCode::parse with a line number.
CurveTable parse_csv(std::string_view text);

}  // namespace effdemand
