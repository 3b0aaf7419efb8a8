#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qlg {

enum class Command { Coherence, Evolve, Kernels, Phase, Decohere, Entangle, Constrain, Figures };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Command command);
/// Throws ConfigError for unknown names.
Command command_from_string(std::string_view text);
std::string_view to_string(OutputFormat format);
OutputFormat output_format_from_string(std::string_view text);

enum class ValueType { Real, Integer, Text };

struct KeySpec {
  std::string name;
  ValueType type = ValueType::Real;
  std::optional<std::string> default_value;  // nullopt means required
  std::vector<std::string> choices;          // allowed Text values, empty for free text
  std::string help;
};

const std::vector<KeySpec>& command_schema(Command command);

struct ConfigValue {
  std::string text;    // canonical rendering of the parsed value
  std::string source;  // "default", "config line N", "flag --set #N ..."
};

struct RunConfig {
  Command command = Command::Coherence;
  std::map<std::string, ConfigValue> parameters;
  std::string output_path;  // empty writes to standard output
  OutputFormat format = OutputFormat::Csv;

  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
};

/// Parses `key = value` lines (with `#` comments) and applies `key=value` flag overrides,
/// which win over file values. Every key is checked against the command schema; numbers
/// are canonicalized to their shortest round-trip form. Throws ConfigError naming the
/// offending line or flag.
RunConfig parse_config(Command command, std::string_view file_text,
                       std::span<const std::string> overrides, std::string output_path = {},
                       OutputFormat format = OutputFormat::Csv,
                       std::string_view file_label = "config");

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

/// Header row plus data rows, comma separated, LF line endings.
std::string render_csv(const Table& table);
/// {"columns": [...], "rows": [[...]], "manifest": {...}}; the table summary lives in the
/// manifest. Non-finite numbers become null.
std::string render_json(const Table& table, const nlohmann::ordered_json& manifest);

/// Resolved config, constants, conventions and calibration. Output path and thread count
/// are excluded so identical configs produce identical bytes.
nlohmann::ordered_json build_manifest(const RunConfig& config, const Table& table);

/// `key = value` lines reproducing the resolved config recorded in a manifest.
std::string config_text_from_manifest(const nlohmann::ordered_json& manifest);

/// Writes the table in `config.format` to `config.output_path`, or standard output when
/// the path is empty. CSV output gets the manifest as a `<path>.manifest.json` sidecar.
/// Throws std::runtime_error when a file cannot be written.
void emit_table(const Table& table, const RunConfig& config);

/// Computes the table for `config`. Independent rows are spread over `threads` workers
/// and stored by index, so the result does not depend on the thread count.
Table run_command(const RunConfig& config, unsigned threads = 1);

/// Rendered bytes (table, and manifest for CSV) without touching the filesystem.
struct RenderedOutput {
  std::string table;
  std::string manifest;
};
RenderedOutput render(const Table& table, const RunConfig& config);

}  // namespace qlg
