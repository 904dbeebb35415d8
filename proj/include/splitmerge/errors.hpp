// Copyright 2026 The splitmerge Authors
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

#ifndef SPLITMERGE_ERRORS_HPP
#define SPLITMERGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace splitmerge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index or mask outside the player set of a game.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid input: overlapping blocks, empty coalitions, bad
// parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed game, partition or config text.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A size cap (player count, enumeration size, branching) was exceeded.
class CapError : public Error {
 public:
  using Error::Error;
};

}  // namespace splitmerge

#endif  // SPLITMERGE_ERRORS_HPP
