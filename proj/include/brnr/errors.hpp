#pragma once

#include <stdexcept>
#include <string>

namespace brnr {

// Error hierarchy shared by the library and the CLI exit-code mapping:
// argument/domain errors -> 2, resource cap -> 4, internal invariant
// violations -> 1 (they indicate a bug, never bad input).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class ResourceError : public Error {
public:
  using Error::Error;
};

class InternalError : public Error {
public:
  using Error::Error;
};

inline void require_arg(bool cond, const std::string& msg) {
  if (!cond) throw ArgumentError(msg);
}

inline void require_internal(bool cond, const std::string& msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace brnr
