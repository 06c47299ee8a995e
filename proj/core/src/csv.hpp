#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace scholarmap::detail {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line of the first character
};

/// RFC 4180 reader. Accepts LF or CRLF record separators and a leading
/// UTF-8 BOM. A blank line yields no record. Throws CsvSyntaxError on an
/// unterminated quoted field or a stray quote inside an unquoted field.
std::vector<CsvRecord> read_csv(std::string_view text);

struct CsvSyntaxError {
  std::size_t line;
  std::size_t record_index;  // 0-based index of the record being read
  std::string message;
};

/// Quotes the field if it contains a comma, quote, CR or LF.
void append_csv_field(std::string& out, std::string_view field);

}  // namespace scholarmap::detail
