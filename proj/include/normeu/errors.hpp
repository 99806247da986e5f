#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace normeu {

// All library failures are reported through this exception type. The kind
// string is a stable machine-readable tag; the CLI prints it on a single
// line as "error: <kind>: <detail>".
//
// Kinds in use:
//   NotPrime, NotOddPrime, BadCongruence, ArgumentNotCoprime,
//   SearchExhausted, DomainError, RangeError, WrongPairing,
//   FactorizationFailure
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

}  // namespace normeu
