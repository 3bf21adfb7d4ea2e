#pragma once

#include <stdexcept>
#include <string>

namespace gsqg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter outside its admissible range.
struct ValidationError : Error {
    using Error::Error;
};

// Argument outside the domain of a map (e.g. negative height).
struct DomainError : Error {
    using Error::Error;
};

// Kernel evaluated on top of one of its singular points.
struct SingularityError : Error {
    using Error::Error;
};

// Grid too coarse for the requested stencil.
struct ResolutionError : Error {
    using Error::Error;
};

// Inconsistent construction geometry (overlapping caps, ramp wider than a gap).
struct GeometryError : Error {
    using Error::Error;
};

}  // namespace gsqg
