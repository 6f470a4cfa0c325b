#include "polyadic/error.hpp"

namespace polyadic {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Capacity: return "Capacity";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::MaximalPath: return "MaximalPath";
    case ErrorKind::MinimalPath: return "MinimalPath";
    case ErrorKind::HorizonExhausted: return "HorizonExhausted";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::DegenerateCurve: return "DegenerateCurve";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DivisionByZeroJet: return "DivisionByZeroJet";
  }
  return "Unknown";
}

}  // namespace polyadic
