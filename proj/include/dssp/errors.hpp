#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dssp {

// Failure class decides the CLI exit code: usage/parameter errors exit
// with 2, runtime verdict failures (missing data, corrupt files,
// exhausted budgets) exit with 1.
enum class ErrorClass { Usage, Runtime };

class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what,
        ErrorClass cls = ErrorClass::Usage)
      : std::runtime_error(what), name_(std::move(name)), class_(cls) {}

  const std::string& name() const noexcept { return name_; }
  ErrorClass error_class() const noexcept { return class_; }

 private:
  std::string name_;
  ErrorClass class_;
};

struct FieldMismatchError : Error {
  explicit FieldMismatchError(const std::string& what)
      : Error("FieldMismatch", what) {}
};

struct ZeroInverseError : Error {
  ZeroInverseError() : Error("ZeroInverse", "inverse of zero") {}
};

struct SingularMatrixError : Error {
  explicit SingularMatrixError(std::size_t rank_found, const std::string& what)
      : Error("SingularMatrix", what), rank(rank_found) {}
  std::size_t rank;
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& what) : Error("Overflow", what) {}
};

struct InvalidParameterError : Error {
  explicit InvalidParameterError(const std::string& what)
      : Error("InvalidParameter", what) {}
};

struct InfeasibleUserCountError : Error {
  explicit InfeasibleUserCountError(const std::string& what)
      : Error("InfeasibleUserCount", what) {}
};

struct NotSpernerError : Error {
  NotSpernerError(std::uint64_t contained, std::uint64_t container,
                  const std::string& what)
      : Error("NotSperner", what), user_contained(contained),
        user_container(container) {}
  std::uint64_t user_contained;  // 1-based user whose set is covered
  std::uint64_t user_container;
};

struct FieldTooSmallError : Error {
  explicit FieldTooSmallError(const std::string& what)
      : Error("FieldTooSmall", what) {}
};

struct SingularSystemError : Error {
  explicit SingularSystemError(const std::string& what)
      : Error("SingularSystem", what) {}
};

struct WindowInfeasibleError : Error {
  explicit WindowInfeasibleError(const std::string& what)
      : Error("WindowInfeasible", what) {}
};

struct BudgetExhaustedError : Error {
  explicit BudgetExhaustedError(const std::string& what)
      : Error("BudgetExhausted", what, ErrorClass::Runtime) {}
};

struct MissingSlotError : Error {
  MissingSlotError(std::uint64_t slot_index, const std::string& what)
      : Error("MissingSlot", what, ErrorClass::Runtime), slot(slot_index) {}
  std::uint64_t slot;
};

struct WrongKindError : Error {
  explicit WrongKindError(const std::string& what)
      : Error("WrongKind", what) {}
};

struct InsufficientSharesError : Error {
  explicit InsufficientSharesError(const std::string& what)
      : Error("InsufficientShares", what) {}
};

struct DuplicatePointError : Error {
  explicit DuplicatePointError(const std::string& what)
      : Error("DuplicatePoint", what) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& what)
      : Error("FormatError", what, ErrorClass::Runtime) {}
};

}  // namespace dssp
