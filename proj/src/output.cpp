#include "ramsey/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace ramsey {

std::string format_double(Real value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 12);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buffer, ptr);
}

void Table::write_csv(std::ostream& os) const {
  for (const auto& comment : comments) os << "# " << comment << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) os << ",";
    os << columns[c];
  }
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ",";
      os << format_double(row[c]);
    }
    os << "\n";
  }
  for (const auto& comment : trailing_comments) os << "# " << comment << "\n";
}

void Table::write_json(std::ostream& os) const {
  const auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  os << "{\n  \"comments\": [";
  for (std::size_t i = 0; i < comments.size(); ++i)
    os << (i ? ", " : "") << quote(comments[i]);
  os << "],\n  \"columns\": [";
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << (i ? ", " : "") << quote(columns[i]);
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << (r ? ",\n    " : "\n    ") << "[";
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c) os << ", ";
      const Real v = rows[r][c];
      // JSON has no inf/nan literals
      if (std::isfinite(v))
        os << format_double(v);
      else
        os << "null";
    }
    os << "]";
  }
  os << (rows.empty() ? "],\n" : "\n  ],\n") << "  \"notes\": [";
  for (std::size_t i = 0; i < trailing_comments.size(); ++i)
    os << (i ? ", " : "") << quote(trailing_comments[i]);
  os << "]\n}\n";
}

std::string Table::render(const std::string& format) const {
  std::ostringstream os;
  if (format == "csv")
    write_csv(os);
  else if (format == "json")
    write_json(os);
  else
    throw std::invalid_argument("Table::render: unknown format '" + format + "'");
  return os.str();
}

}  // namespace ramsey
