#pragma once

#include <stdexcept>
#include <string>

namespace symucc {

/// Base class for every domain error raised by the toolkit. The CLI maps
/// these to exit code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define SYMUCC_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(what) {}         \
    const char* kind() const noexcept override { return #Name; }    \
  };

SYMUCC_DEFINE_ERROR(ParseError)
SYMUCC_DEFINE_ERROR(UnsupportedReference)
SYMUCC_DEFINE_ERROR(IndexError)
SYMUCC_DEFINE_ERROR(ContractViolation)
SYMUCC_DEFINE_ERROR(DegenerateRotation)
SYMUCC_DEFINE_ERROR(CapacityError)
SYMUCC_DEFINE_ERROR(OptimizerDiverged)
SYMUCC_DEFINE_ERROR(IoError)

#undef SYMUCC_DEFINE_ERROR

}  // namespace symucc
