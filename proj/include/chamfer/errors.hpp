#pragma once

#include <stdexcept>

namespace chamfer {

// Base class of all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An argument lies outside its documented range.
struct BadRange : Error { using Error::Error; };

// Mask construction and lookup.
struct IncompleteTable : Error { using Error::Error; };
struct NonpositiveWeight : Error { using Error::Error; };
struct BadScale : Error { using Error::Error; };
struct OutOfMask : Error { using Error::Error; };
struct Origin : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };

// Restricted-step computations need c strictly above p/sqrt(p^2+1);
// below that bound the two-step path structure breaks down.
struct CBelowThreshold : Error { using Error::Error; };
struct BadK : Error { using Error::Error; };

// The feasible-weight characterization exists only for p = 2 and p = 3.
struct UnsupportedP : Error { using Error::Error; };

struct RadiusTooSmall : Error { using Error::Error; };

// Grids and distance fields.
struct NoSeeds : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// File handling.
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace chamfer
