// sievelab command-line driver: one subcommand per experiment.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "sievelab/error.hpp"
#include "sievelab/runner.hpp"

namespace {

using nlohmann::ordered_json;

// Flags that map one-to-one onto config keys.
const char* const kKeys[] = {"set", "N",      "grid",  "eta", "k", "D0", "delta", "degree", "Q",
                             "trials", "seed", "rho", "U", "V", "budget", "F", "tuple", "threads"};

void print_error(std::string_view kind, std::string_view message) {
  std::string escaped;
  for (char c : message) escaped += c == '"' ? std::string("\\\"") : std::string(1, c);
  std::cerr << "error: kind=" << kind << " message=\"" << escaped << "\"\n";
}

ordered_json cell_json(const sievelab::Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) return *d;
  const auto& s = std::get<std::string>(c);
  return s.empty() ? ordered_json(nullptr) : ordered_json(s);
}

ordered_json result_json(const sievelab::ExperimentResult& r) {
  ordered_json j;
  j["experiment"] = r.config.experiment;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : sievelab::to_key_values(r.config)) cfg[k] = v;
  j["config"] = cfg;
  j["headline"] = r.headline;
  j["tables"] = ordered_json::array();
  for (const auto& t : r.tables) {
    ordered_json tj{{"name", t.name}, {"columns", t.columns}, {"rows", ordered_json::array()}};
    for (const auto& row : t.rows) {
      ordered_json rj = ordered_json::array();
      for (const auto& c : row) rj.push_back(cell_json(c));
      tj["rows"].push_back(rj);
    }
    j["tables"].push_back(tj);
  }
  j["warnings"] = r.warnings;
  return j;
}

void print_listing(bool json) {
  const auto& list = sievelab::list_experiments();
  if (json) {
    ordered_json j = ordered_json::array();
    for (const auto& e : list)
      j.push_back({{"name", e.name}, {"description", e.description}, {"parameters", e.parameters}});
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& e : list) {
    std::string params;
    for (const auto& p : e.parameters) params += (params.empty() ? "" : " ") + ("--" + p);
    std::cout << e.name << "  " << e.description << "  [" << params << "]\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) sievelab::fail(sievelab::ErrorKind::kIo, "cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc >= 2) {
    const std::string first = argv[1];
    if (!first.empty() && first[0] != '-' && first != "list" && !sievelab::is_experiment(first)) {
      print_error("invalid-argument", "unknown experiment '" + first + "'");
      return 2;
    }
  }

  CLI::App app{"sievelab: prime gaps in structured sets"};
  app.require_subcommand(0, 1);
  bool top_json = false;
  app.add_flag("--json", top_json, "machine-readable output");

  auto* list = app.add_subcommand("list", "list experiments");
  bool list_json = false;
  list->add_flag("--json", list_json, "machine-readable listing");

  std::map<std::string, std::string> values;
  std::string out, config_file;
  bool json = false;
  for (const auto& e : sievelab::list_experiments()) {
    auto* sub = app.add_subcommand(e.name, e.description);
    for (const char* key : kKeys) sub->add_option(std::string("--") + key, values[key]);
    sub->add_option("--out", out, "primary CSV path; sidecars and plot data go next to it");
    sub->add_option("--config", config_file, "key = value file; flags win");
    sub->add_flag("--json", json, "print the result as JSON");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("invalid-argument", e.what());
    return 2;
  }

  if (*list || app.get_subcommands().empty()) {
    print_listing(list_json || top_json);
    return 0;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    sievelab::KeyValues kv;
    if (!config_file.empty()) {
      // Either a plain key = value file or the "# key = value" header of an earlier CSV.
      const std::string text = read_file(config_file);
      kv = text.starts_with("# ") ? sievelab::to_key_values(sievelab::config_from_csv_header(text))
                                  : sievelab::parse_key_values(text);
    }
    kv.emplace_back("experiment", chosen->get_name());
    for (const char* key : kKeys)
      if (chosen->get_option(std::string("--") + key)->count() > 0) kv.emplace_back(key, values[key]);
    const bool threads_given =
        std::any_of(kv.begin(), kv.end(), [](const auto& p) { return p.first == "threads"; });
    sievelab::ExperimentConfig config = sievelab::config_from_key_values(kv);
    if (!threads_given) config.threads = std::max(1u, std::thread::hardware_concurrency());

    std::optional<std::filesystem::path> cache;
    if (const char* env = std::getenv("SIEVELAB_CACHE"); env && *env) cache = std::filesystem::path(env);

    const sievelab::ExperimentResult result = sievelab::run_experiment(config, cache);
    if (json) {
      std::cout << result_json(result).dump(2) << "\n";
    } else {
      std::cout << result.headline << "\n";
      if (out.empty()) std::cout << sievelab::format_csv(result);
    }
    if (!out.empty()) {
      for (const auto& p : sievelab::write_outputs(result, out))
        if (!json) std::cout << "wrote " << p.string() << "\n";
    }
  } catch (const sievelab::Error& e) {
    print_error(sievelab::to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal-error", e.what());
    return 1;
  }
  return 0;
}
