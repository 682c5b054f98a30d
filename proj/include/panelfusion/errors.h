#ifndef PANELFUSION_ERRORS_H_
#define PANELFUSION_ERRORS_H_

#include <stdexcept>
#include <string>

namespace panelfusion {

// Input data that violates a documented contract: schema mismatches,
// duplicate ids, non-positive weights, universe mismatch, bad config.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No feasible flow exists for a fusion request.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant was breached (e.g. an assignment exceeding a
// panelist's units). Indicates a bug upstream of the check.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Cost or supply magnitudes too large for exact integer arithmetic.
class OverflowError : public std::range_error {
 public:
  using std::range_error::range_error;
};

}  // namespace panelfusion

#endif  // PANELFUSION_ERRORS_H_
