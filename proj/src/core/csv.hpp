// SPDX-License-Identifier: Apache-2.0
//
// manf - movable-antenna near-field beamforming toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace manf {

/// Comma-delimited table with a header row. Numeric cells are written with
/// %.17g so a parse round-trip reproduces the exact doubles.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
};

std::string fmt_double(double v);
double parse_double(const std::string &cell);

std::string to_csv_string(const Table &table);
Table parse_csv_string(const std::string &text);

void write_csv(const Table &table, const std::filesystem::path &path);
Table read_csv(const std::filesystem::path &path);

} // namespace manf
