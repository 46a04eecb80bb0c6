#pragma once

#include "symtail/exact.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace symtail {

/// Comma-separated table with a header row and LF line endings. Fields
/// containing commas, quotes or newlines are quoted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> fields);
  std::size_t rows() const { return rows_.size(); }

  void write(std::ostream& out) const;

  /// Exact column value followed by its 12-significant-digit rounding.
  static std::vector<std::string> exact(const ExactRational& q);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace symtail
