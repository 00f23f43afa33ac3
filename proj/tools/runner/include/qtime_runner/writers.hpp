#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qtime_runner/result_table.hpp"

namespace qtime::runner {

enum class Format { csv, json };

Format parse_format(const std::string& text);
std::string format_extension(Format format);

/// %.17g with a '.' decimal point regardless of locale; "nan", "inf", "-inf".
std::string format_number(double value);

/// RFC-4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(const std::string& text);

/// Header of alphabetically ordered column names, one line per row, '\n' endings.
std::string to_csv(const ResultTable& table);

/// {"checks": [...], "columns": {...}, "metadata": {...}, "name": ...}
nlohmann::json to_json_value(const ResultTable& table);

/// Deterministic JSON text: keys sorted, two-space indent, numbers as
/// integers or %.17g, trailing newline.
std::string dump_json(const nlohmann::json& value);

/// Writes through a temporary file in the same directory and renames it.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// Writes the table in `format` at `stem` + extension; CSV gets a
/// `<stem>.meta.json` sidecar with checks and metadata. Returns the paths.
std::vector<std::filesystem::path> write_table(const ResultTable& table, const std::filesystem::path& stem,
                                               Format format);

}  // namespace qtime::runner
