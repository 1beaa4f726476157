#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ramsey/types.hpp"

namespace ramsey {

// Locale-independent formatting with 12 significant digits.
std::string format_double(Real value);

// Column table with deterministic CSV / JSON rendering: fixed float
// formatting, '\n' line endings, '.' decimal separator.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<Real>> rows;
  std::vector<std::string> trailing_comments;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
  std::string render(const std::string& format) const;  // "csv" or "json"
};

}  // namespace ramsey
