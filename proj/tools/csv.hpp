#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace gsg::cli {

// One CSV field. Doubles are printed with 17 significant digits.
class Cell {
 public:
  Cell(double v) : value_(v) {}
  Cell(int v) : value_(static_cast<long>(v)) {}
  Cell(long v) : value_(v) {}
  Cell(unsigned long v) : value_(static_cast<long>(v)) {}
  Cell(unsigned long long v) : value_(static_cast<long>(v)) {}
  Cell(const char* v) : value_(std::string(v)) {}
  Cell(std::string v) : value_(std::move(v)) {}

  std::string Text() const;

 private:
  std::variant<double, long, std::string> value_;
};

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void Header(const std::vector<std::string>& columns);
  void Row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
};

// Joins with `sep`, formatting doubles like Cell.
std::string Join(const std::vector<double>& values, char sep = ';');
std::string Join(const std::vector<std::string>& values, char sep = ';');

}  // namespace gsg::cli
