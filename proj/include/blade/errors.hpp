/*
Copyright 2026 The BLADE Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blade {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// A probability or parameter lies outside the domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Encoded data is truncated or inconsistent with the tables used to read it.
class CorruptInput : public Error {
 public:
  using Error::Error;
};

// Block size, sample length or code length outside what the coder supports.
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

// A structure failed invariant checks (Kraft equality, ordering, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed table artifact.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline void require(bool cond, const char* what) {
  if (!cond) throw ContractViolation(what);
}

}  // namespace detail
}  // namespace blade
