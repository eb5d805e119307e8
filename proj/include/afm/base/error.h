// afm/base/error.h

// Copyright 2026  The AFM Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AFM_BASE_ERROR_H_
#define AFM_BASE_ERROR_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace afm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or dimensionality mismatch; message names the op and the shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration value (negative weight, unknown key, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File read/write failure; message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// API misuse: non-scalar loss, backward without forward, double backward.
class ContractError : public Error {
 public:
  using Error::Error;
};

namespace internal {
inline void strcat_impl(std::ostringstream&) {}
template <typename T, typename... Rest>
void strcat_impl(std::ostringstream& os, const T& v, const Rest&... rest) {
  os << v;
  strcat_impl(os, rest...);
}
}  // namespace internal

/// Stream-formats its arguments into one string.
template <typename... Args>
std::string strcat(const Args&... args) {
  std::ostringstream os;
  internal::strcat_impl(os, args...);
  return os.str();
}

}  // namespace afm

#endif  // AFM_BASE_ERROR_H_
