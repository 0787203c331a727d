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

#ifndef DIVRISK_SRC_CORE_CSV_HPP
#define DIVRISK_SRC_CORE_CSV_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace divrisk::detail {

struct CsvField {
  std::string text;    // trimmed
  std::size_t column;  // 1-based column of the first character
};

struct CsvRow {
  std::size_t line;  // 1-based
  std::vector<CsvField> fields;
};

/// Splits on newlines and commas; drops blank lines and '#' comments.
std::vector<CsvRow> split_csv(const std::string& text);

/// Parses a finite double or throws ParseError at the field position.
double parse_number(const CsvField& field, std::size_t line);

std::string read_file(const std::string& path);

}  // namespace divrisk::detail

#endif  // DIVRISK_SRC_CORE_CSV_HPP
