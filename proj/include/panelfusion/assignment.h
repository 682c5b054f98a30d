#ifndef PANELFUSION_ASSIGNMENT_H_
#define PANELFUSION_ASSIGNMENT_H_

#include <string>
#include <vector>

#include "panelfusion/types.h"

namespace panelfusion {

struct AssignedPair {
  std::string left_id;
  std::string right_id;
  double weight = 0;  // units / unit_scale
  FlowQuantity units = 0;

  bool operator==(const AssignedPair&) const = default;
};

// Pairs are kept sorted by (left_id, right_id) with no duplicates.
struct AssignmentSet {
  std::vector<AssignedPair> pairs;

  bool operator==(const AssignmentSet&) const = default;
};

// Assignment CSV: header left_id,right_id,weight,units; rows sorted by
// (left_id, right_id). Weight is rendered in shortest round-trip form.
std::string FormatAssignments(const AssignmentSet& assignments);
void WriteAssignments(const AssignmentSet& assignments,
                      const std::string& path);

// Throws ValidationError naming the row on malformed or unsorted input and
// IoError when the file cannot be read.
AssignmentSet ParseAssignments(const std::string& text,
                               const std::string& source = "assignments");
AssignmentSet ReadAssignments(const std::string& path);

}  // namespace panelfusion

#endif  // PANELFUSION_ASSIGNMENT_H_
