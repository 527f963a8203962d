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

#include "csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace manf {

void Table::add_row(std::vector<std::string> row) {
    if (!header.empty() && row.size() != header.size())
        throw Error(Errc::invalid_argument, "row width does not match header");
    rows.push_back(std::move(row));
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string &cell) {
    char *end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str())
        throw Error(Errc::invalid_argument, "cell is not numeric: " + cell);
    return v;
}

namespace {

void check_cell(const std::string &cell) {
    if (cell.find_first_of(",\n\r") != std::string::npos)
        throw Error(Errc::invalid_argument, "cell contains a delimiter: " + cell);
}

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string to_csv_string(const Table &table) {
    std::ostringstream os;
    for (size_t i = 0; i < table.header.size(); ++i) {
        check_cell(table.header[i]);
        os << table.header[i] << (i + 1 < table.header.size() ? "," : "");
    }
    os << '\n';
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            check_cell(row[i]);
            os << row[i] << (i + 1 < row.size() ? "," : "");
        }
        os << '\n';
    }
    return os.str();
}

Table parse_csv_string(const std::string &text) {
    Table t;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        auto cells = split_line(line);
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.add_row(std::move(cells));
        }
    }
    return t;
}

void write_csv(const Table &table, const std::filesystem::path &path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error(Errc::io, "cannot open " + path.string() + " for writing");
    os << to_csv_string(table);
    if (!os)
        throw Error(Errc::io, "write failed for " + path.string());
}

Table read_csv(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw Error(Errc::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_csv_string(buf.str());
}

} // namespace manf
