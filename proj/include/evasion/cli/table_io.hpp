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

#pragma once

// Tabular output shared by every command. CSV files start with
// "# key=value" metadata lines (always including config_hash), then a
// header row. JSON files carry the same content as an object.

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "evasion/cli/config.hpp"

namespace evasion::cli {

using Cell = std::variant<double, std::string>;

struct Table {
    std::map<std::string, std::string> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;
    [[nodiscard]] double number(std::size_t row, const std::string& name) const;
    [[nodiscard]] std::string text(std::size_t row, const std::string& name) const;
};

/// 17 significant digits, general format.
[[nodiscard]] std::string format_number(double v);

void write_table(const std::filesystem::path& path, const Table& t, OutputFormat format);
/// Format chosen by extension (.csv or .json).
[[nodiscard]] Table read_table(const std::filesystem::path& path);
[[nodiscard]] std::string file_extension(OutputFormat f);

/// Throws std::runtime_error with the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace evasion::cli
