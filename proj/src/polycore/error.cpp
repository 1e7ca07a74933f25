#include "wronsos/error.hpp"

namespace wronsos {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Degenerate: return "degenerate_input";
    case ErrorKind::UndefinedGcd: return "undefined_gcd";
    case ErrorKind::NotRepresentable: return "not_representable";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::InapplicableTransform: return "inapplicable_transform";
    case ErrorKind::InconclusiveScan: return "inconclusive_scan";
    case ErrorKind::NoCertificate: return "no_certificate";
    case ErrorKind::NoCompletion: return "no_completion";
    case ErrorKind::InternalConsistency: return "internal_consistency";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace wronsos
