#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlg/cli_io.hpp"
#include "qlg/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qlg::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-current, decoherence and bound calculations", "qlg"};
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format = "csv";
  unsigned threads = 1;
  app.add_option("command", command,
                 "coherence | evolve | kernels | phase | decohere | entangle | constrain | "
                 "figures")
      ->required();
  app.add_option("--config", config_path, "key = value file");
  app.add_option("--set", overrides, "key=value override, repeatable")->take_all();
  app.add_option("--out", out_path, "output file (default: standard output)");
  app.add_option("--format", format, "csv or json");
  app.add_option("--threads", threads, "worker threads; output does not depend on it")
      ->check(CLI::Range(1u, 256u));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto cmd = qlg::command_from_string(command);
    const auto fmt = qlg::output_format_from_string(format);
    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    const auto config = qlg::parse_config(cmd, text, overrides, out_path, fmt,
                                          config_path.empty() ? "config" : config_path);
    const auto table = qlg::run_command(config, threads);
    qlg::emit_table(table, config);
    return 0;
  } catch (const qlg::ConfigError& e) {
    std::cerr << "qlg: config error: " << e.what() << "\n";
    return 2;
  } catch (const qlg::PreconditionError& e) {
    std::cerr << "qlg: invalid parameter: " << e.what() << "\n";
    return 2;
  } catch (const qlg::ConvergenceError& e) {
    std::cerr << "qlg: no convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "qlg: " << e.what() << "\n";
    return 1;
  }
}
