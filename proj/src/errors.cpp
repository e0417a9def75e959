#include "sievelab/errors.hpp"

namespace sievelab {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::NotNonDecreasing: return "NotNonDecreasing";
    case ErrorKind::ResidueOutOfRange: return "ResidueOutOfRange";
    case ErrorKind::TooManyClassesForPrime: return "TooManyClassesForPrime";
    case ErrorKind::DuplicateClass: return "DuplicateClass";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidRegularParams: return "InvalidRegularParams";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::InvalidTuple: return "InvalidTuple";
    case ErrorKind::NotAdmissible: return "AdmissibilityError";
    case ErrorKind::InvalidAnchor: return "InvalidAnchor";
    case ErrorKind::NoMatchingPosition: return "NoMatchingPosition";
    case ErrorKind::InvalidExplicitM: return "InvalidExplicitM";
    case ErrorKind::NotInResidueClass: return "NotInResidueClass";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

SieveError::SieveError(ErrorKind kind, const std::string& what,
                       std::optional<std::size_t> index)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
      kind_(kind),
      index_(index) {}

}  // namespace sievelab
