// Copyright 2026 The sqlbench Authors
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

#ifndef SQLBENCH_ERROR_H_
#define SQLBENCH_ERROR_H_

#include <stdexcept>
#include <string>

namespace sqlbench {

// Error classes map one-to-one onto CLI exit statuses.
enum class ErrorClass {
  kConfig = 2,
  kData = 3,
  kEndpoint = 4,
  kInternal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass error_class, const std::string& what)
      : std::runtime_error(what), error_class_(error_class) {}

  ErrorClass error_class() const { return error_class_; }

 private:
  ErrorClass error_class_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorClass::kConfig, what) {}
};

// Invalid arguments to a rendering or pipeline operation.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what)
      : Error(ErrorClass::kConfig, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what)
      : Error(ErrorClass::kData, what) {}
};

class CatalogError : public Error {
 public:
  explicit CatalogError(const std::string& what)
      : Error(ErrorClass::kData, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, size_t position)
      : Error(ErrorClass::kData, message + " at offset " +
                                     std::to_string(position)),
        message_(message),
        position_(position) {}

  const std::string& message() const { return message_; }
  size_t position() const { return position_; }

 private:
  std::string message_;
  size_t position_;
};

// A completion did not contain the structured answer a prompt asked for.
class ExtractionError : public Error {
 public:
  explicit ExtractionError(const std::string& what)
      : Error(ErrorClass::kData, what) {}
};

class TimingError : public Error {
 public:
  explicit TimingError(const std::string& what)
      : Error(ErrorClass::kData, what) {}
};

class TransportError : public Error {
 public:
  explicit TransportError(const std::string& what)
      : Error(ErrorClass::kEndpoint, what) {}
};

class EndpointError : public Error {
 public:
  EndpointError(int status, const std::string& what)
      : Error(ErrorClass::kEndpoint, what), status_(status) {}

  int status() const { return status_; }

 private:
  int status_;
};

}  // namespace sqlbench

#endif  // SQLBENCH_ERROR_H_
