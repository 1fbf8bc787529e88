#pragma once

#include <stdexcept>
#include <string>

namespace wcs {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Index extents disagree or a required index shape (4n+1, 4n+2, ...) is violated.
struct DimensionError : Error {
  using Error::Error;
};

// Singular metric, degenerate symplectic form, or nonpositive spectrum where
// positivity is required.
struct DegeneracyError : Error {
  using Error::Error;
};

// Frame handed to a kernel is not orthonormal within tolerance.
struct FrameError : Error {
  using Error::Error;
};

// Bad user-supplied data (duplicate interpolation nodes, zero kappa, ...).
struct InputError : Error {
  using Error::Error;
};

}  // namespace wcs
