// Copyright 2026 The neuronmine Authors
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

#ifndef NEURONMINE_ERROR_HPP_
#define NEURONMINE_ERROR_HPP_

#include <exception>
#include <stdexcept>
#include <string>

namespace neuronmine {

// Base of all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or a precondition the caller violated (exit code 1).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (exit code 2).
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or a numeric computation that went off the rails
// (exit code 3).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Tokenizer/parser failure with a source position (1-based).
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, int line, int column)
      : DataError(what + " at " + std::to_string(line) + ":" +
                  std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Process exit code for an exception: 1 usage, 2 data, 3 numeric. Anything
// that is not a library error maps to 2.
int exit_code(const std::exception& e);

}  // namespace neuronmine

#endif  // NEURONMINE_ERROR_HPP_
