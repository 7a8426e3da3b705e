// Copyright 2026 The pdspace Authors
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

#ifndef PDSPACE_ERRORS_H_
#define PDSPACE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace pdspace {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad parameters, points outside their space, broken
// preconditions, mismatched spaces.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The space lacks a capability the operation needs (nearest points in A,
// geodesics, a base point, ...).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdspace

#endif  // PDSPACE_ERRORS_H_
