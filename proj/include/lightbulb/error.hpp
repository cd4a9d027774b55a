#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lightbulb {

enum class ErrorCode {
  InvalidRecord,
  InvalidCohort,
  OutOfRange,
  NegativeRate,
  EmptyOverlap,
  InvalidConfig,
  MissingColumn,
  UnknownColumn,
  MalformedRow,
  MalformedNumber,
  NegativeCount,
  NonContiguousAges,
  InconsistentRecord,
  EmptyCohort,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception. Parse errors carry
/// the 1-based line number and the column name they refer to.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, std::optional<std::size_t> line = std::nullopt,
        std::string column = {});

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::size_t>& line() const noexcept { return line_; }
  const std::string& column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::string column_;
  std::string detail_;
};

}  // namespace lightbulb
