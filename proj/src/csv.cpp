#include "noma/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace noma {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

namespace {

std::string cell_to_string(const CsvCell& cell) {
  if (std::holds_alternative<std::string>(cell)) {
    return csv_escape(std::get<std::string>(cell));
  }
  if (std::holds_alternative<double>(cell)) {
    return format_double(std::get<double>(cell));
  }
  return std::to_string(std::get<long>(cell));
}

}  // namespace

std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<CsvCell>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(header[i]);
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::invalid_argument("csv: row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << cell_to_string(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<CsvCell>>& rows) {
  write_file(path, csv_to_string(header, rows));
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(row);
    row.clear();
  };
  while (i < n) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field += '"';
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        field += c;
        ++i;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        ++i;
        break;
      case ',':
        end_field();
        field_started = true;
        ++i;
        break;
      case '\r':
        ++i;
        break;
      case '\n':
        end_row();
        ++i;
        break;
      default:
        field += c;
        field_started = true;
        ++i;
        break;
    }
  }
  if (in_quotes) throw std::invalid_argument("csv: unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  return parse_csv(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace noma
