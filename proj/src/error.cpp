#include "lightbulb/error.hpp"

#include <utility>

namespace lightbulb {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidRecord: return "InvalidRecord";
    case ErrorCode::InvalidCohort: return "InvalidCohort";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::EmptyOverlap: return "EmptyOverlap";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::MalformedNumber: return "MalformedNumber";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::NonContiguousAges: return "NonContiguousAges";
    case ErrorCode::InconsistentRecord: return "InconsistentRecord";
    case ErrorCode::EmptyCohort: return "EmptyCohort";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& detail,
                           const std::optional<std::size_t>& line, const std::string& column) {
  std::string msg{to_string(code)};
  if (line) msg += " (line " + std::to_string(*line) + (column.empty() ? "" : ", column " + column) + ")";
  else if (!column.empty()) msg += " (column " + column + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, std::optional<std::size_t> line, std::string column)
    : std::runtime_error(format_message(code, detail, line, column)),
      code_(code),
      line_(line),
      column_(std::move(column)),
      detail_(std::move(detail)) {}

}  // namespace lightbulb
