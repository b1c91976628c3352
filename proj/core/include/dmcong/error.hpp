#pragma once

#include <stdexcept>
#include <string>

namespace dmcong {

  //! Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Malformed or out-of-range input (bad text, invalid parameters).
  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  //! A configured resource cap would be exceeded.
  class CapExceeded : public Error {
   public:
    using Error::Error;
  };

  //! Operands come from different contexts, flavours or monoids.
  class Mismatch : public Error {
   public:
    using Error::Error;
  };

}  // namespace dmcong
