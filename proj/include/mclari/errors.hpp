// Copyright 2026 The mclari-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCLARI_ERRORS_HPP_
#define MCLARI_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mclari {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A scalar input lies outside its admissible interval (drive voltage,
/// schedule time, sweep bound). The message names the violated limit.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Parameters or commands violate a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Requested body dimensions lie outside the reachable shape set.
class InfeasibleShapeError : public Error {
 public:
  using Error::Error;
};

/// A corridor constraint is narrower than the body can squeeze.
class InfeasiblePassageError : public Error {
 public:
  using Error::Error;
};

/// Scenario or sweep configuration file problems (bad schema, unknown keys).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mclari

#endif  // MCLARI_ERRORS_HPP_
