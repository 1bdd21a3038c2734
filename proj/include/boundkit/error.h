// Copyright 2026 The boundkit Authors.
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

#ifndef BOUNDKIT_ERROR_H_
#define BOUNDKIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace boundkit {

// Process exit codes used by the command line tool.
enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kInvariant = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

// Bad command line or configuration.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ExitCode::kUsage, message) {}
};

// Malformed or unsuitable input data, including I/O failures.
class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ExitCode::kData, message) {}
};

// Malformed line in a structured input file.
class ParseError : public DataError {
 public:
  ParseError(size_t line, const std::string& message)
      : DataError("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  size_t line() const { return line_; }

 private:
  size_t line_;
};

// A model or numeric invariant did not hold.
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& message)
      : Error(ExitCode::kInvariant, message) {}
};

}  // namespace boundkit

#endif  // BOUNDKIT_ERROR_H_
