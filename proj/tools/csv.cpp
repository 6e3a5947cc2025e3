#include "csv.hpp"

#include <cmath>

namespace gsg::cli {

namespace {

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string Cell::Text() const {
  if (const auto* d = std::get_if<double>(&value_)) return FormatDouble(*d);
  if (const auto* l = std::get_if<long>(&value_)) return std::to_string(*l);
  return Quote(std::get<std::string>(value_));
}

void CsvWriter::Header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << (i ? "," : "") << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::Row(const std::vector<Cell>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out_ << (i ? "," : "") << cells[i].Text();
  }
  out_ << '\n';
  out_.flush();
}

std::string Join(const std::vector<double>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += FormatDouble(values[i]);
  }
  return out;
}

std::string Join(const std::vector<std::string>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += values[i];
  }
  return out;
}

}  // namespace gsg::cli
