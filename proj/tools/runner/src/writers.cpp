#include "qtime_runner/writers.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace qtime::runner {

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw std::invalid_argument("unknown output format '" + text + "' (expected csv or json)");
}

std::string format_extension(Format format) { return format == Format::csv ? ".csv" : ".json"; }

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string out(buf);
  // snprintf honours LC_NUMERIC; the output contract is '.'.
  for (char& ch : out) {
    if (ch == ',') ch = '.';
  }
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string to_csv(const ResultTable& table) {
  // Both maps are ordered; merge their keys for a single alphabetical header.
  std::set<std::string> names;
  for (const auto& [name, _] : table.numeric()) names.insert(name);
  for (const auto& [name, _] : table.text()) names.insert(name);

  std::string out;
  bool first = true;
  for (const auto& name : names) {
    if (!first) out += ',';
    out += csv_field(name);
    first = false;
  }
  out += '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    first = true;
    for (const auto& name : names) {
      if (!first) out += ',';
      first = false;
      if (auto it = table.numeric().find(name); it != table.numeric().end()) {
        out += format_number(it->second[r]);
      } else {
        out += csv_field(table.text().at(name)[r]);
      }
    }
    out += '\n';
  }
  return out;
}

namespace {

nlohmann::json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

nlohmann::json checks_json(const ResultTable& table) {
  auto arr = nlohmann::json::array();
  for (const auto& c : table.checks()) {
    arr.push_back({{"name", c.name},
                   {"value", number_or_string(c.value)},
                   {"relation", c.relation},
                   {"threshold", number_or_string(c.threshold)},
                   {"passed", c.passed}});
  }
  return arr;
}

void dump_into(const nlohmann::json& v, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      // nlohmann's default object is a std::map, already sorted by key.
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_into(it.value(), out, depth + 1);
      }
      out += '\n' + close + '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_into(item, out, depth + 1);
      }
      out += '\n' + close + ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_number(d) : "null";
      return;
    }
    default:
      out += v.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  }
}

}  // namespace

nlohmann::json to_json_value(const ResultTable& table) {
  nlohmann::json columns = nlohmann::json::object();
  for (const auto& [name, values] : table.numeric()) {
    auto arr = nlohmann::json::array();
    for (double v : values) arr.push_back(number_or_string(v));
    columns[name] = std::move(arr);
  }
  for (const auto& [name, values] : table.text()) columns[name] = values;
  return {{"name", table.name()},
          {"columns", std::move(columns)},
          {"checks", checks_json(table)},
          {"metadata", table.metadata()},
          {"passed", table.passed()}};
}

std::string dump_json(const nlohmann::json& value) {
  std::string out;
  dump_into(value, out, 0);
  out += '\n';
  return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<std::filesystem::path> write_table(const ResultTable& table, const std::filesystem::path& stem,
                                               Format format) {
  std::vector<std::filesystem::path> written;
  auto main_path = stem;
  main_path += format_extension(format);
  if (format == Format::csv) {
    auto meta_path = stem;
    meta_path += ".meta.json";
    nlohmann::json meta = {{"name", table.name()},
                           {"checks", checks_json(table)},
                           {"metadata", table.metadata()},
                           {"passed", table.passed()}};
    write_atomically(main_path, to_csv(table));
    write_atomically(meta_path, dump_json(meta));
    written = {main_path, meta_path};
  } else {
    write_atomically(main_path, dump_json(to_json_value(table)));
    written = {main_path};
  }
  return written;
}

}  // namespace qtime::runner
