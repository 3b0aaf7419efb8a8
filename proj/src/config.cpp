#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qlg/cli_io.hpp"
#include "qlg/errors.hpp"

namespace qlg {

namespace {

constexpr Command kAllCommands[] = {Command::Coherence, Command::Evolve,   Command::Kernels,
                                    Command::Phase,     Command::Decohere, Command::Entangle,
                                    Command::Constrain, Command::Figures};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const KeySpec* find_key(Command command, std::string_view key) {
  for (const auto& spec : command_schema(command))
    if (spec.name == key) return &spec;
  return nullptr;
}

// Returns the canonical text, or nullopt when the value does not parse.
std::optional<std::string> canonicalize(const KeySpec& spec, std::string_view raw) {
  std::string_view v = raw;
  if (spec.type != ValueType::Text && !v.empty() && v.front() == '+') v.remove_prefix(1);
  switch (spec.type) {
    case ValueType::Real: {
      double x = 0.0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
      if (ec != std::errc() || ptr != v.data() + v.size() || v.empty() || !std::isfinite(x))
        return std::nullopt;
      return format_double(x);
    }
    case ValueType::Integer: {
      long long x = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
      if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) return std::nullopt;
      return std::to_string(x);
    }
    case ValueType::Text:
      if (v.empty()) return std::nullopt;
      if (spec.choices.empty()) return std::string(v);
      for (const auto& c : spec.choices)
        if (c == v) return std::string(v);
      return std::nullopt;
  }
  return std::nullopt;
}

std::string describe_type(const KeySpec& spec) {
  switch (spec.type) {
    case ValueType::Real:
      return "a finite real number";
    case ValueType::Integer:
      return "an integer";
    case ValueType::Text:
      break;
  }
  if (spec.choices.empty()) return "a nonempty string";
  std::string out = "one of";
  for (std::size_t i = 0; i < spec.choices.size(); ++i)
    out += (i ? ", " : " ") + spec.choices[i];
  return out;
}

struct Assignment {
  std::string key;
  std::string value;
  std::string where;  // provenance used in messages and the manifest
};

Assignment split_assignment(std::string_view text, const std::string& where) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError(where + ": expected 'key = value', got '" + std::string(text) + "'");
  Assignment a{std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1))),
               where};
  if (a.key.empty()) throw ConfigError(where + ": missing key before '='");
  if (a.value.empty()) throw ConfigError(where + ": missing value for key '" + a.key + "'");
  return a;
}

ConfigValue resolve(Command command, const Assignment& a) {
  const KeySpec* spec = find_key(command, a.key);
  if (!spec)
    throw ConfigError(a.where + ": unknown key '" + a.key + "' for command '" +
                      std::string(to_string(command)) + "'");
  auto text = canonicalize(*spec, a.value);
  if (!text)
    throw ConfigError(a.where + ": value '" + a.value + "' for key '" + a.key + "' is not " +
                      describe_type(*spec));
  return ConfigValue{*text, a.where};
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Coherence:
      return "coherence";
    case Command::Evolve:
      return "evolve";
    case Command::Kernels:
      return "kernels";
    case Command::Phase:
      return "phase";
    case Command::Decohere:
      return "decohere";
    case Command::Entangle:
      return "entangle";
    case Command::Constrain:
      return "constrain";
    case Command::Figures:
      return "figures";
  }
  return "";
}

Command command_from_string(std::string_view text) {
  for (auto c : kAllCommands)
    if (to_string(c) == text) return c;
  throw ConfigError("unknown command '" + std::string(text) +
                    "' (expected coherence, evolve, kernels, phase, decohere, entangle, "
                    "constrain or figures)");
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat output_format_from_string(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

double RunConfig::real(const std::string& key) const {
  const auto it = parameters.find(key);
  require(it != parameters.end(), "config has no key '" + key + "'");
  double x = 0.0;
  const auto& t = it->second.text;
  std::from_chars(t.data(), t.data() + t.size(), x);
  return x;
}

long long RunConfig::integer(const std::string& key) const {
  const auto it = parameters.find(key);
  require(it != parameters.end(), "config has no key '" + key + "'");
  long long x = 0;
  const auto& t = it->second.text;
  std::from_chars(t.data(), t.data() + t.size(), x);
  return x;
}

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = parameters.find(key);
  require(it != parameters.end(), "config has no key '" + key + "'");
  return it->second.text;
}

RunConfig parse_config(Command command, std::string_view file_text,
                       std::span<const std::string> overrides, std::string output_path,
                       OutputFormat format, std::string_view file_label) {
  RunConfig config;
  config.command = command;
  config.output_path = std::move(output_path);
  config.format = format;

  std::map<std::string, ConfigValue> from_file;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= file_text.size()) {
    const auto end = file_text.find('\n', pos);
    std::string_view line = file_text.substr(pos, end == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : end - pos);
    pos = end == std::string_view::npos ? file_text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto a =
        split_assignment(line, std::string(file_label) + " line " + std::to_string(line_no));
    auto value = resolve(command, a);
    if (const auto it = from_file.find(a.key); it != from_file.end())
      throw ConfigError("key '" + a.key + "' is set twice: " + it->second.source + " and " +
                        a.where);
    from_file.emplace(a.key, std::move(value));
  }

  std::map<std::string, ConfigValue> from_flags;
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const auto a = split_assignment(overrides[i], "flag --set #" + std::to_string(i + 1));
    auto value = resolve(command, a);
    if (const auto it = from_flags.find(a.key); it != from_flags.end())
      throw ConfigError("key '" + a.key + "' is set twice: " + it->second.source + " and " +
                        a.where);
    if (const auto it = from_file.find(a.key); it != from_file.end())
      value.source += " (overrides " + it->second.source + ")";
    from_flags.emplace(a.key, std::move(value));
  }

  for (const auto& spec : command_schema(command)) {
    if (auto it = from_flags.find(spec.name); it != from_flags.end()) {
      config.parameters.emplace(spec.name, it->second);
    } else if (auto jt = from_file.find(spec.name); jt != from_file.end()) {
      config.parameters.emplace(spec.name, jt->second);
    } else if (spec.default_value) {
      config.parameters.emplace(spec.name,
                                ConfigValue{*canonicalize(spec, *spec.default_value), "default"});
    } else {
      throw ConfigError("missing required key '" + spec.name + "' for command '" +
                        std::string(to_string(command)) + "'");
    }
  }
  return config;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

namespace {

std::string csv_field(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  return std::get<std::string>(cell);
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << bytes;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out += (i ? "," : "") + csv_field(table.columns[i]);
  out += '\n';
  for (const auto& row : table.rows) {
    require(row.size() == table.columns.size(), "table rows must match the column count");
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& table, const nlohmann::ordered_json& manifest) {
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    require(row.size() == table.columns.size(), "table rows must match the column count");
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) r.push_back(json_cell(cell));
    doc["rows"].push_back(std::move(r));
  }
  doc["manifest"] = manifest;
  return doc.dump(2) + "\n";
}

std::string config_text_from_manifest(const nlohmann::ordered_json& manifest) {
  std::string out;
  for (const auto& [key, value] : manifest.at("config").items())
    out += key + " = " + value.get<std::string>() + "\n";
  return out;
}

RenderedOutput render(const Table& table, const RunConfig& config) {
  const auto manifest = build_manifest(config, table);
  if (config.format == OutputFormat::Json) return {render_json(table, manifest), ""};
  return {render_csv(table), manifest.dump(2) + "\n"};
}

void emit_table(const Table& table, const RunConfig& config) {
  const auto out = render(table, config);
  if (config.output_path.empty()) {
    std::cout << out.table;
    std::cout.flush();
    return;
  }
  write_file(config.output_path, out.table);
  if (!out.manifest.empty()) write_file(config.output_path + ".manifest.json", out.manifest);
}

}  // namespace qlg
