// Copyright 2026 The rigidlab Authors
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

#ifndef RIGIDLAB_ERROR_HPP_
#define RIGIDLAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace rigidlab {

// Base class for all library errors. Precondition violations and
// malformed inputs are reported by throwing.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point, region or spec of the wrong space kind.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

// The requested image is not representable in the region class.
class UnsupportedExact : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed experiment configuration; field() is the JSON path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace rigidlab

#endif  // RIGIDLAB_ERROR_HPP_
