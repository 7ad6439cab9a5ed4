// Copyright 2026 The HDR-FUNQUE Authors. All Rights Reserved.
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

#ifndef FUNQUE_CSV_H_
#define FUNQUE_CSV_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace funque {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int Column(std::string_view name) const;  // -1 when absent
};

// Comma-separated, optional double quotes, blank lines skipped. Throws
// ParseError on unterminated quotes or ragged rows.
CsvTable ParseCsv(std::string_view text);
CsvTable ReadCsv(const std::filesystem::path& path);

std::string CsvEscape(std::string_view field);
std::string CsvLine(const std::vector<std::string>& fields);

// Strict decimal parse; throws ParseError naming `what`.
double ParseNumber(std::string_view s, std::string_view what);

}  // namespace funque

#endif  // FUNQUE_CSV_H_
