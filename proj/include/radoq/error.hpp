#ifndef RADOQ_ERROR_HPP
#define RADOQ_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace radoq {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A rational with a zero denominator, a zero value where nonzero is
// required, or an unparseable textual form.
struct InvalidRational : Error {
    using Error::Error;
};

// A prime parameter that is not actually prime, or not odd where an odd
// prime is required.
struct InvalidPrime : Error {
    using Error::Error;
};

// v_p or w_p requested for an input outside their domain.
struct UndefinedValuation : Error {
    using Error::Error;
};

// A structurally invalid argument: wrong arity, zero coefficient,
// malformed permutation, color count below one, and similar.
struct InvalidArgument : Error {
    using Error::Error;
};

// A precondition stated by an operation's contract does not hold.
struct PreconditionViolation : Error {
    using Error::Error;
};

// An equation whose coefficient list is unusable (fewer than two terms
// or a zero coefficient).
struct DegenerateEquation : Error {
    using Error::Error;
};

// An element whose prime support is not contained in the declared
// support of the universe at hand.
struct UnsupportedPrime : Error {
    using Error::Error;
};

// A coloring evaluated outside its domain.
struct UndefinedColor : Error {
    using Error::Error;
};

// Serialized input that does not match the expected schema.
struct MalformedData : Error {
    using Error::Error;
};

// Export requested for a proof tree that has not passed validation.
struct RefusedExport : Error {
    using Error::Error;
};

// A search or enumeration ran out of its explicit budget.  Carries the
// partial statistics accumulated up to the moment the budget tripped.
struct BudgetExceeded : Error {
    std::uint64_t branches = 0;
    std::uint64_t decisions = 0;
    std::uint64_t nodes = 0;
    BudgetExceeded(const std::string& what, std::uint64_t branches_,
                   std::uint64_t decisions_, std::uint64_t nodes_)
        : Error(what), branches(branches_), decisions(decisions_), nodes(nodes_) {}
};

}  // namespace radoq

#endif
