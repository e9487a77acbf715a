#include "gsk/error.hpp"

namespace gsk {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::ElementNotInGroup: return "ElementNotInGroup";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotAPGroup: return "NotAPGroup";
    case ErrorCode::RootIsGkType: return "RootIsGkType";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::NonIntegralGenus: return "NonIntegralGenus";
    case ErrorCode::NonCoprime: return "NonCoprime";
    case ErrorCode::OutOfRegime: return "OutOfRegime";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Undecidable: return "Undecidable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace gsk
