#pragma once

#include <stdexcept>
#include <string>

namespace farmrisk {

// Base of every error the library throws. The CLI maps subclasses onto exit
// codes (config/usage -> 2, environment -> 3, data -> 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Action not allowed by the game rules (e.g. Invest at High).
class RuleError : public Error {
 public:
  using Error::Error;
};

// Operation on an object in the wrong lifecycle state.
class StateError : public Error {
 public:
  using Error::Error;
};

class IncompleteSessionError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

class CoverageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

}  // namespace farmrisk
