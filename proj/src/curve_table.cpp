#include "effdemand/curve_table.hpp"

#include <sstream>

#include "effdemand/errors.hpp"

namespace effdemand {

void CurveTable::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::invalid_parameter, "curve table: " + what);
  };
  if (columns.empty()) fail("no columns");
  if (!status.empty() && status.size() != rows.size()) {
    fail("status labels do not match the row count");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != columns.size()) {
      std::ostringstream os;
      os << "row " << i << " has " << rows[i].size() << " cells, expected "
         << columns.size();
      fail(os.str());
    }
    if (!rows[i][0]) {
      std::ostringstream os;
      os << "row " << i << " has no abscissa";
      fail(os.str());
    }
    if (i > 0 && !(*rows[i][0] > *rows[i - 1][0])) {
      std::ostringstream os;
      os << "abscissa not strictly increasing at row " << i;
      fail(os.str());
    }
  }
}

}  // namespace effdemand
