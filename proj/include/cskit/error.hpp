// Copyright 2026 The cskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSKIT_ERROR_HPP
#define CSKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cskit {

// Base class for all recoverable tool errors. The CLI maps these to exit
// code 2 (usage / bad data); anything else is an internal error (exit 1).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data (bad sentence, bad weight, bad schema value).
struct ValidationError : Error {
  using Error::Error;
};

// Line-aligned inputs whose lengths disagree.
struct AlignmentError : Error {
  using Error::Error;
};

// A generator was called on a corpus that cannot support it.
struct PreconditionError : Error {
  using Error::Error;
};

// Missing or inconsistent files/flags.
struct ConfigError : Error {
  using Error::Error;
};

// Declared tensor dimensions disagree with the payload.
struct ShapeError : Error {
  using Error::Error;
};

// An argument value outside its documented range.
struct ParamError : Error {
  using Error::Error;
};

}  // namespace cskit

#endif  // CSKIT_ERROR_HPP
