#include "panelfusion/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "panelfusion/errors.h"

namespace panelfusion {

std::vector<CsvRow> ParseCsv(std::string_view text,
                             const std::string& source) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<CsvRow> rows;
  std::vector<std::string> fields;
  std::string field;
  size_t record = 1;
  size_t i = 0;
  bool record_started = false;

  auto end_record = [&] {
    fields.push_back(std::move(field));
    field.clear();
    const bool blank = fields.size() == 1 && fields[0].empty();
    if (!blank) rows.push_back({record, std::move(fields)});
    fields.clear();
    ++record;
    record_started = false;
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == '"' && field.empty() && !record_started) {
      // Quoted field.
      const size_t start_record = record;
      ++i;
      for (;;) {
        if (i >= text.size()) {
          throw ValidationError(source + ": unterminated quote at row " +
                                std::to_string(start_record));
        }
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field.push_back(text[i++]);
      }
      record_started = true;
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      record_started = false;
      ++i;
      continue;
    }
    if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_record();
      i += 2;
      continue;
    }
    if (c == '\n') {
      end_record();
      ++i;
      continue;
    }
    field.push_back(c);
    record_started = true;
    ++i;
  }
  if (!field.empty() || !fields.empty() || record_started) end_record();
  return rows;
}

std::string EscapeCsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string FormatDouble(double value) {
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

bool ParseDouble(std::string_view text, double& value) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  return result.ec == std::errc() && result.ptr == text.data() + text.size() &&
         std::isfinite(value);
}

bool ParseInt64(std::string_view text, long long& value) {
  if (text.empty()) return false;
  auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError("error writing " + path);
}

}  // namespace panelfusion
