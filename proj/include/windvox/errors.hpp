#pragma once

#include <stdexcept>
#include <string>

namespace windvox {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A face references a vertex that does not exist.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Input geometry is too degenerate for the requested operation
/// (coincident vertices, zero total area, no usable normals).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Query point lies on the surface within the surface tolerance.
class OnSurfaceError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace windvox
