// Copyright 2026 The lcpseg Authors
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

#ifndef LCPSEG_CORE_ERROR_HPP_
#define LCPSEG_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lcpseg {

// Mirrors lcpseg_status_t of the C interface.
enum class Status {
  kOk = 0,
  kParam = 1,
  kIo = 2,
  kParse = 3,
  kContract = 4,
  kInternal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(Status status, std::string message)
      : std::runtime_error(std::move(message)), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

class ParamError : public Error {
 public:
  explicit ParamError(std::string message) : Error(Status::kParam, std::move(message)) {}
};

class IoError : public Error {
 public:
  explicit IoError(std::string message) : Error(Status::kIo, std::move(message)) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(std::string message) : Error(Status::kParse, std::move(message)) {}
  // Location-aware form: "<origin>:<line>: <message>" with 1-based lines.
  ParseError(const std::string& origin, size_t line, const std::string& message)
      : Error(Status::kParse, origin + ":" + std::to_string(line) + ": " + message) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(std::string message) : Error(Status::kContract, std::move(message)) {}
};

}  // namespace lcpseg

#endif  // LCPSEG_CORE_ERROR_HPP_
