#pragma once

#include <stdexcept>
#include <string>

namespace tdes {

// Base of every fault raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an operation precondition (wrong width, wrong length).
class UsageFault : public Error {
 public:
  using Error::Error;
};

class KeyFormatFault : public Error {
 public:
  using Error::Error;
};

class StrictAlignmentFault : public Error {
 public:
  using Error::Error;
};

class PaddingFault : public Error {
 public:
  using Error::Error;
};

class IoFault : public Error {
 public:
  using Error::Error;
};

// Two lanes wrote the same cell within one simulated phase.
class RaceFault : public Error {
 public:
  using Error::Error;
};

// A simulated thread touched a cell outside its memory space.
class IndexFault : public Error {
 public:
  using Error::Error;
};

}  // namespace tdes
