#pragma once

#include <string>
#include <variant>
#include <vector>

namespace noma {

using CsvCell = std::variant<std::string, double, long>;

// Shortest representation that round-trips a double exactly.
std::string format_double(double value);

std::string csv_escape(const std::string& field);

std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<CsvCell>>& rows);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<CsvCell>>& rows);

// RFC-4180-style parse (quoted fields, doubled quotes, CRLF tolerant).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

std::vector<std::vector<std::string>> read_csv(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace noma
