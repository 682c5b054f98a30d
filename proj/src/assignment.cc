#include "panelfusion/assignment.h"

#include <tuple>

#include "panelfusion/csv.h"
#include "panelfusion/errors.h"

namespace panelfusion {

std::string FormatAssignments(const AssignmentSet& assignments) {
  std::string out = "left_id,right_id,weight,units\n";
  for (const AssignedPair& pair : assignments.pairs) {
    out += EscapeCsvField(pair.left_id);
    out += ',';
    out += EscapeCsvField(pair.right_id);
    out += ',';
    out += FormatDouble(pair.weight);
    out += ',';
    out += std::to_string(pair.units);
    out += '\n';
  }
  return out;
}

void WriteAssignments(const AssignmentSet& assignments,
                      const std::string& path) {
  WriteFile(path, FormatAssignments(assignments));
}

AssignmentSet ParseAssignments(const std::string& text,
                               const std::string& source) {
  std::vector<CsvRow> rows = ParseCsv(text, source);
  if (rows.empty() ||
      rows[0].fields !=
          std::vector<std::string>{"left_id", "right_id", "weight", "units"}) {
    throw ValidationError(source +
                          ": header must be left_id,right_id,weight,units");
  }
  AssignmentSet set;
  set.pairs.reserve(rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    const std::string where = source + " row " + std::to_string(row.row);
    if (row.fields.size() != 4) {
      throw ValidationError(where + ": expected 4 fields, got " +
                            std::to_string(row.fields.size()));
    }
    AssignedPair pair;
    pair.left_id = row.fields[0];
    pair.right_id = row.fields[1];
    if (!ParseDouble(row.fields[2], pair.weight) || pair.weight < 0) {
      throw ValidationError(where + ": malformed weight \"" + row.fields[2] +
                            "\"");
    }
    long long units = 0;
    if (!ParseInt64(row.fields[3], units) || units < 0) {
      throw ValidationError(where + ": malformed units \"" + row.fields[3] +
                            "\"");
    }
    pair.units = units;
    if (!set.pairs.empty()) {
      const AssignedPair& prev = set.pairs.back();
      if (std::tie(prev.left_id, prev.right_id) >=
          std::tie(pair.left_id, pair.right_id)) {
        throw ValidationError(where + ": rows not sorted by (left_id, "
                                      "right_id) or duplicated");
      }
    }
    set.pairs.push_back(std::move(pair));
  }
  return set;
}

AssignmentSet ReadAssignments(const std::string& path) {
  return ParseAssignments(ReadFile(path), path);
}

}  // namespace panelfusion
