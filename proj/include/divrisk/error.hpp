/*******************************************************************************
* Copyright 2026 The divrisk Authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*******************************************************************************/

#ifndef DIVRISK_ERROR_HPP
#define DIVRISK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace divrisk {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  unsupported_divergence,
  invalid_parameter,
  dimension,
  support,
  empty_data,
  invalid_value,
  domain,
  invalid_spectrum,
  stale_multiplier,
  oracle_size,
  panel,
  numeric,
  parse,
  io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Input file could not be parsed; carries the 1-based position of the fault.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorCode::parse, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A bracket could not be established or a search failed to make progress.
class NumericError : public Error {
 public:
  NumericError(const std::string& message, std::string trace)
      : Error(ErrorCode::numeric, message), trace_(std::move(trace)) {}

  const std::string& trace() const noexcept { return trace_; }

 private:
  std::string trace_;
};

}  // namespace divrisk

#endif  // DIVRISK_ERROR_HPP
