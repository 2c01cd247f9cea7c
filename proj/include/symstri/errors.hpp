#pragma once
// ============================================================================
// Error taxonomy shared by every module.
//
//   CatalogError    — an unknown space name / malformed descriptor file.
//   DomainError     — mathematically invalid input (non-dominant weight,
//                     non-positive-definite form, q >= N on a major arc, ...).
//   ResolutionError — a computation was refused because the requested grid /
//                     sample counts sit below the documented exactness floor;
//                     the message always states the required minima.
//
// The CLI maps these to exit codes: CatalogError/DomainError -> 1,
// ResolutionError -> 3, usage errors -> 2.
// ============================================================================

#include <stdexcept>
#include <string>

namespace symstri {

struct CatalogError : std::runtime_error {
    explicit CatalogError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace symstri
