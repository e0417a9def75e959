#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sievelab {

enum class ErrorKind {
    LengthMismatch,
    NonPrimeModulus,
    NotNonDecreasing,
    ResidueOutOfRange,
    TooManyClassesForPrime,
    DuplicateClass,
    IndexOutOfRange,
    InvalidRegularParams,
    DegenerateDenominator,
    InvalidTuple,
    NotAdmissible,
    InvalidAnchor,
    NoMatchingPosition,
    InvalidExplicitM,
    NotInResidueClass,
    CapExceeded,
    InvalidConfig,
};

std::string_view error_kind_name(ErrorKind kind);

class SieveError : public std::runtime_error {
public:
    SieveError(ErrorKind kind, const std::string& what,
               std::optional<std::size_t> index = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    // 0-based position of the offending element, when there is one.
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> index_;
};

}  // namespace sievelab
