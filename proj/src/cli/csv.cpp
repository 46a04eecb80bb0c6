#include "symtail/csv.hpp"

#include <stdexcept>

namespace symtail {

namespace {

void write_field(std::ostream& out, const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    write_field(out, fields[i]);
  }
  out << '\n';
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> fields) {
  if (fields.size() != header_.size()) throw std::logic_error("CSV row width does not match the header");
  rows_.push_back(std::move(fields));
}

void CsvTable::write(std::ostream& out) const {
  write_line(out, header_);
  for (const auto& r : rows_) write_line(out, r);
}

std::vector<std::string> CsvTable::exact(const ExactRational& q) { return {to_string(q), to_decimal(q, 12)}; }

}  // namespace symtail
