#pragma once

#include <stdexcept>
#include <string>

namespace hallmark {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive routine passed its element/subgroup/table budget.
class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

// Malformed input: bad permutation images, degree mismatch, non-prime in a
// prime set, violated operation precondition, unparsable group file.
class InvalidInput : public Error {
public:
  explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

// frattini_hall: no conjugacy class of Hall subgroups of B is stable under
// the ambient group; signals G not in E_pi or an upstream bug.
class NoInvariantClass : public Error {
public:
  explicit NoInvariantClass(const std::string& msg) : Error(msg) {}
};

// extend_hall: the exhaustive search found no extension although the checked
// preconditions guarantee one; always an implementation bug.
class ExtensionMissing : public Error {
public:
  explicit ExtensionMissing(const std::string& msg) : Error(msg) {}
};

// lift_hall_from_quotient: no Hall subgroup of the source lifts the quotient
// Hall subgroup; signals G not in E_pi or a bug.
class LiftMissing : public Error {
public:
  explicit LiftMissing(const std::string& msg) : Error(msg) {}
};

// The E_pi precheck of a constructive theorem failed; mathematically
// meaningful negative, not a bug.
class NotEPi : public Error {
public:
  explicit NotEPi(const std::string& msg) : Error(msg) {}
};

// A runtime assertion that restates a theorem failed; always a bug.
class InternalCheckFailed : public Error {
public:
  explicit InternalCheckFailed(const std::string& msg) : Error(msg) {}
};

}  // namespace hallmark
