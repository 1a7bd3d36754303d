/*
 * Copyright 2026 The voxdet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VOXDET_ERROR_H_
#define VOXDET_ERROR_H_

#include <stdexcept>
#include <string>

namespace voxdet {

enum class ErrorKind {
  kValidation,  // malformed input or violated precondition
  kIo,          // file could not be read or written
};

// All library failures are reported as voxdet::Error. The CLI maps kind() to
// its exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorKind::kValidation, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::kIo, message) {}
};

// Parse failure with a 1-based line number (0 when not line-oriented) and
// the offending field name or path.
class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& field, const std::string& message)
      : ValidationError(Format(line, field, message)),
        line_(line),
        field_(field) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string Format(int line, const std::string& field,
                            const std::string& message) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  int line_;
  std::string field_;
};

}  // namespace voxdet

#endif  // VOXDET_ERROR_H_
