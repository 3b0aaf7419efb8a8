#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qlg/cli_io.hpp"
#include "qlg/errors.hpp"

using namespace qlg;

namespace {

RunConfig figure_config(const std::string& fig, OutputFormat fmt = OutputFormat::Csv) {
  const std::vector<std::string> flags{"figure=" + fig};
  return parse_config(Command::Figures, "", flags, "", fmt);
}

std::string error_of(Command cmd, std::string_view text, std::vector<std::string> flags = {}) {
  try {
    parse_config(cmd, text, flags);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

double as_real(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return static_cast<double>(std::get<long long>(c));
}

}  // namespace

TEST_SUITE("cli-io") {

TEST_CASE("config parsing resolves defaults, file values and flags") {
  const std::string text = "# comment\nmass = 2.5  # trailing\n\ninterrogation_time=3\n";
  const std::vector<std::string> flags{"coupling=2e-6"};
  const auto cfg = parse_config(Command::Phase, text, flags);
  CHECK(cfg.real("mass") == 2.5);
  CHECK(cfg.parameters.at("mass").source == "config line 2");
  CHECK(cfg.real("interrogation_time") == 3.0);
  CHECK(cfg.real("coupling") == 2e-6);
  CHECK(cfg.parameters.at("coupling").source == "flag --set #1");
  CHECK(cfg.parameters.at("geometry_factor").source == "default");
  CHECK(cfg.text("convention") == "paper-si");
  CHECK(cfg.integer("n_points") == 11);
}

TEST_CASE("flags override file values and record both origins") {
  const std::vector<std::string> flags{"mass=1", "interrogation_time=4"};
  const auto cfg = parse_config(Command::Phase, "mass = 2\ninterrogation_time = 3\n", flags);
  CHECK(cfg.real("mass") == 1.0);
  CHECK(cfg.parameters.at("mass").source == "flag --set #1 (overrides config line 1)");
  CHECK(cfg.parameters.at("interrogation_time").source == "flag --set #2 (overrides config line 2)");
}

TEST_CASE("duplicate keys name both locations") {
  const auto e = error_of(Command::Phase, "mass = 1\ncoupling = 1\n\n\nmass = 2\n");
  CHECK(e.find("'mass'") != std::string::npos);
  CHECK(e.find("config line 1") != std::string::npos);
  CHECK(e.find("config line 5") != std::string::npos);
  const auto f = error_of(Command::Phase, "", {"coupling=1", "coupling=2"});
  CHECK(f.find("flag --set #1") != std::string::npos);
  CHECK(f.find("flag --set #2") != std::string::npos);
}

TEST_CASE("malformed configs are rejected with the offending line") {
  CHECK(error_of(Command::Phase, "mass 1\n").find("config line 1") != std::string::npos);
  CHECK(error_of(Command::Phase, "coupling = 1\nbogus = 1\n").find("unknown key 'bogus'") !=
        std::string::npos);
  CHECK(error_of(Command::Phase, "coupling = 1\nbogus = 1\n").find("config line 2") != std::string::npos);
  CHECK(error_of(Command::Phase, "mass = heavy\n").find("'heavy'") != std::string::npos);
  CHECK(error_of(Command::Phase, "n_points = 2.5\n").find("n_points") != std::string::npos);
  CHECK(error_of(Command::Phase, "convention = cgs\n").find("cgs") != std::string::npos);
  CHECK(error_of(Command::Figures, "").find("missing required key 'figure'") != std::string::npos);
  CHECK_THROWS_AS(command_from_string("plot"), ConfigError);
  CHECK_THROWS_AS(output_format_from_string("xml"), ConfigError);
  CHECK(command_from_string("constrain") == Command::Constrain);
}

TEST_CASE("values are canonicalized") {
  const std::vector<std::string> flags{"mass=1.40e-25", "interrogation_time=0001.0"};
  const auto cfg = parse_config(Command::Phase, "", flags);
  CHECK(cfg.parameters.at("mass").text == "1.4e-25");
  CHECK(cfg.parameters.at("interrogation_time").text == "1");
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
    const auto s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("CSV rendering quotes fields that need it") {
  Table t;
  t.columns = {"name", "value", "count"};
  t.rows = {{std::string("plain"), 1.5, 3LL}, {std::string("a,b \"q\""), 0.25, -1LL}};
  CHECK(render_csv(t) == "name,value,count\nplain,1.5,3\n\"a,b \"\"q\"\"\",0.25,-1\n");
}

TEST_CASE("JSON rendering carries the manifest and nulls non-finite values") {
  Table t;
  t.columns = {"x"};
  t.rows = {{std::nan("")}, {1.0}};
  t.summary["answer"] = 42;
  const auto cfg = parse_config(Command::Phase, "", {});
  const auto doc = nlohmann::json::parse(render_json(t, build_manifest(cfg, t)));
  CHECK(doc["columns"][0] == "x");
  CHECK(doc["rows"][0][0].is_null());
  CHECK(doc["rows"][1][0] == 1.0);
  const auto& m = doc["manifest"];
  CHECK(m["command"] == "phase");
  CHECK(m["summary"]["answer"] == 42);
  CHECK(m["config"]["mass"] == "1.4e-25");
  CHECK(m["provenance"]["mass"] == "default");
  CHECK(m.contains("constants"));
  CHECK(m["conventions"].contains("geometry_factor_calibration"));
}

TEST_CASE("CSV output gets a manifest sidecar") {
  const auto cfg = figure_config("fig2");
  const auto out = render(run_command(cfg), cfg);
  CHECK(out.table.rfind("g,visibility,phase\n", 0) == 0);
  const auto m = nlohmann::json::parse(out.manifest);
  CHECK(m["config"]["figure"] == "fig2");
  const auto j = figure_config("fig2", OutputFormat::Json);
  CHECK(render(run_command(j), j).manifest.empty());
}

TEST_CASE("fig2 phase is linear in visibility for each coupling") {
  const auto t = run_command(figure_config("fig2"));
  std::map<double, std::pair<std::vector<double>, std::vector<double>>> by_g;
  for (const auto& row : t.rows) {
    auto& [v, p] = by_g[as_real(row[0])];
    v.push_back(as_real(row[1]));
    p.push_back(as_real(row[2]));
  }
  CHECK(by_g.size() == 3);
  for (const auto& [g, vp] : by_g) {
    CHECK(std::abs(oracle::linear_intercept(vp.first, vp.second)) <= 1e-12);
    CHECK(vp.second.front() == 0.0);
  }
  const double k1 = oracle::linear_slope(by_g[1e-6].first, by_g[1e-6].second);
  const double k2 = oracle::linear_slope(by_g[2e-6].first, by_g[2e-6].second);
  CHECK(k2 / k1 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("fig3b reports the m^2 slope") {
  const auto t = run_command(figure_config("fig3b"));
  std::vector<double> lm, lr;
  for (const auto& row : t.rows) {
    lm.push_back(std::log(as_real(row[0])));
    lr.push_back(std::log(as_real(row[1])));
  }
  CHECK(std::abs(oracle::linear_slope(lm, lr) - 2.0) <= 1e-6);
  CHECK(std::abs(t.summary["loglog_slope"].get<double>() - 2.0) <= 1e-6);
}

TEST_CASE("every figure is byte-identical across runs and thread counts") {
  for (const char* fig : {"fig1", "fig2", "fig3a", "fig3b", "fig4", "fig5"}) {
    const auto cfg = figure_config(fig, OutputFormat::Json);
    const auto a = render(run_command(cfg, 1), cfg).table;
    const auto b = render(run_command(cfg, 1), cfg).table;
    const auto c = render(run_command(cfg, 4), cfg).table;
    CHECK_MESSAGE(a == b, fig);
    CHECK_MESSAGE(a == c, fig);
  }
}

TEST_CASE("the manifest reproduces the run") {
  const std::vector<std::string> flags{"figure=fig3a", "n_points=7", "lc_max=5"};
  const auto cfg = parse_config(Command::Figures, "", flags);
  const auto first = render(run_command(cfg), cfg);
  const auto text = config_text_from_manifest(nlohmann::ordered_json::parse(first.manifest));
  const auto again = parse_config(Command::Figures, text, {});
  const auto second = render(run_command(again), again);
  CHECK(first.table == second.table);
  const auto m1 = nlohmann::json::parse(first.manifest);
  const auto m2 = nlohmann::json::parse(second.manifest);
  CHECK(m1["config"] == m2["config"]);
  CHECK(m1["summary"] == m2["summary"]);
}

TEST_CASE("every command runs with its defaults") {
  for (auto cmd : {Command::Coherence, Command::Evolve, Command::Kernels, Command::Phase,
                   Command::Decohere, Command::Entangle, Command::Constrain}) {
    const auto cfg = parse_config(cmd, "", {});
    const auto t = run_command(cfg, 2);
    CHECK_MESSAGE(!t.rows.empty(), to_string(cmd));
    for (const auto& row : t.rows) CHECK(row.size() == t.columns.size());
  }
}

}  // TEST_SUITE
