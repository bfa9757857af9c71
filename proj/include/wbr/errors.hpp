#pragma once

#include <stdexcept>
#include <string>

namespace wbr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A required exact division failed (ring has torsion the construction forbids).
struct NonUnitError : Error {
    using Error::Error;
};

// An enumeration or symbolic-size guard was exceeded.
struct GuardError : Error {
    using Error::Error;
};

// An input document or constructor argument violates an invariant.
struct ValidationError : Error {
    using Error::Error;
};

// A coefficient that must be a numerical polynomial (or an integer) is not.
// This would falsify one of the integrality theorems; it is always reported.
struct IntegralityError : Error {
    using Error::Error;
};

}  // namespace wbr
