/*
 Copyright 2026 The laxsynth Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#pragma once

// Minimal CSV: comma separator, '.' decimal point, one header row, LF line
// endings, no quoting. Doubles are written in shortest round-trip form.

#include <iosfwd>
#include <string>
#include <vector>

namespace laxsynth::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name, or -1.
  int column(const std::string& name) const;
};

std::string format_double(double v);
double parse_double(const std::string& s);

void write_row(std::ostream& os, const std::vector<std::string>& fields);

Table read(std::istream& is);
Table read_file(const std::string& path);

}  // namespace laxsynth::csv
