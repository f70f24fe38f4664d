#pragma once

#include <stdexcept>
#include <string>

namespace ofdmjam {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand sizes do not agree with each other.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid numerology, antenna counts, tap counts or other parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Too few samples to cut out the requested OFDM frame or bit group.
class FramingError : public Error {
 public:
  using Error::Error;
};

// Estimation problem without enough data to be well-posed.
class IllPosedError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ofdmjam
