#ifndef PANELFUSION_CSV_H_
#define PANELFUSION_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace panelfusion {

struct CsvRow {
  size_t row;  // 1-based physical record number; the header is row 1
  std::vector<std::string> fields;
};

// RFC 4180 records: comma separated, double-quote quoting with "" escapes,
// LF or CRLF line ends. A leading UTF-8 byte order mark is skipped and blank
// lines are ignored. Throws ValidationError on an unterminated quote.
std::vector<CsvRow> ParseCsv(std::string_view text, const std::string& source);

// Quotes a field when it contains a comma, quote, CR or LF.
std::string EscapeCsvField(std::string_view field);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

// Strict full-string decimal parse; false on trailing garbage, empty input,
// or non-finite results.
bool ParseDouble(std::string_view text, double& value);
bool ParseInt64(std::string_view text, long long& value);

// Throw IoError on failure.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace panelfusion

#endif  // PANELFUSION_CSV_H_
