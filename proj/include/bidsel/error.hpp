#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The bidsel Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <stdexcept>
#include <string>

namespace bidsel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A value or container violates a documented invariant.
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

/// Parameters handed to a routine cannot satisfy its preconditions.
class InfeasibleParameters : public Error
{
public:
  using Error::Error;
};

/// The enumeration requested from brute force exceeds the configured cap.
class CapExceeded : public Error
{
public:
  using Error::Error;
};

/// A cooperative deadline expired while a routine was running.
class Timeout : public Error
{
public:
  using Error::Error;
};

/// A postcondition the library guarantees was found broken at runtime.
class InternalError : public Error
{
public:
  using Error::Error;
};

/// File or stream failure; the message carries the offending path.
class IoError : public Error
{
public:
  using Error::Error;
};

namespace detail {

inline void Require(bool condition, std::string const &message)
{
  if (!condition)
  {
    throw InvalidArgument(message);
  }
}

}  // namespace detail
}  // namespace bidsel
