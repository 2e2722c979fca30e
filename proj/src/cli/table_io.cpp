// Copyright 2026 The Evasion Authors
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

#include "evasion/cli/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace evasion::cli {

using nlohmann::json;

namespace {

std::optional<double> parse_number(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string cell_text(const Cell& c) {
    if (const double* v = std::get_if<double>(&c)) return format_number(*v);
    return std::get<std::string>(c);
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    Table t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            t.metadata[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        auto cells = split_csv_line(line);
        if (t.columns.empty()) {
            t.columns = std::move(cells);
            continue;
        }
        if (cells.size() != t.columns.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(t.columns.size()) + " cells");
        }
        std::vector<Cell> row;
        row.reserve(cells.size());
        for (auto& c : cells) {
            if (auto v = parse_number(c)) {
                row.emplace_back(*v);
            } else {
                row.emplace_back(std::move(c));
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table read_json_table(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    Table t;
    try {
        for (const auto& [k, v] : j.at("metadata").items()) t.metadata[k] = v.get<std::string>();
        t.columns = j.at("columns").get<std::vector<std::string>>();
        for (const json& r : j.at("rows")) {
            std::vector<Cell> row;
            for (const json& c : r) {
                if (c.is_number()) {
                    row.emplace_back(c.get<double>());
                } else {
                    row.emplace_back(c.get<std::string>());
                }
            }
            if (row.size() != t.columns.size()) throw std::runtime_error("row width mismatch");
            t.rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": malformed table (" + e.what() + ")");
    }
    return t;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw std::out_of_range("no column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& name) const {
    const Cell& c = rows.at(row).at(column(name));
    if (const double* v = std::get_if<double>(&c)) return *v;
    throw std::runtime_error("column '" + name + "' is not numeric");
}

std::string Table::text(std::size_t row, const std::string& name) const {
    return cell_text(rows.at(row).at(column(name)));
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

std::string file_extension(OutputFormat f) { return f == OutputFormat::Csv ? ".csv" : ".json"; }

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw std::runtime_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_table(const std::filesystem::path& path, const Table& t, OutputFormat format) {
    std::string out;
    if (format == OutputFormat::Csv) {
        for (const auto& [k, v] : t.metadata) out += "# " + k + "=" + v + "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
        out += "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ",";
                out += cell_text(row[i]);
            }
            out += "\n";
        }
    } else {
        json rows = json::array();
        for (const auto& row : t.rows) {
            json r = json::array();
            for (const Cell& c : row) {
                if (const double* v = std::get_if<double>(&c)) {
                    r.push_back(*v);
                } else {
                    r.push_back(std::get<std::string>(c));
                }
            }
            rows.push_back(std::move(r));
        }
        const json j{{"metadata", t.metadata}, {"columns", t.columns}, {"rows", std::move(rows)}};
        out = j.dump(1) + "\n";
    }
    write_text_file(path, out);
}

Table read_table(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".csv") return read_csv(path);
    if (ext == ".json") return read_json_table(path);
    throw std::runtime_error("unsupported table extension '" + ext + "'");
}

}  // namespace evasion::cli
