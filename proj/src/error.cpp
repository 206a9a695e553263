#include "rispace/error.hpp"

namespace rispace {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::DomainOverflow: return "DomainOverflow";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::UnsupportedBackend: return "UnsupportedBackend";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::PremiseViolated: return "PremiseViolated";
    case ErrorCode::NormInfinite: return "NormInfinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace rispace
