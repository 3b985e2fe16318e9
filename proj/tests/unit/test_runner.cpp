#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sievelab/error.hpp"
#include "sievelab/runner.hpp"

using namespace sievelab;

namespace {
ExperimentConfig cfg(const KeyValues& kv) { return config_from_key_values(kv); }
}  // namespace

TEST_SUITE("runner") {
  TEST_CASE("listing") {
    CHECK(list_experiments().size() == 8);
    CHECK(is_experiment("gaps"));
    CHECK_FALSE(is_experiment("nope"));
  }

  TEST_CASE("config parsing") {
    const auto c = cfg({{"experiment", "gaps"}, {"N", "1e4"}, {"eta", "0.5"}, {"set", "ap:1,4"}});
    REQUIRE(c.N.has_value());
    CHECK(*c.N == 10000);
    CHECK_THROWS_AS(cfg({{"experiment", "gaps"}, {"bogus", "1"}}), Error);
    CHECK_THROWS_AS(cfg({{"experiment", "nope"}}), Error);
    CHECK_THROWS_AS(cfg({{"experiment", "gaps"}, {"N", "ten"}}), Error);
    const auto r = resolve(cfg({{"experiment", "gaps"}}));
    CHECK(*r.N == 1000000);
    CHECK(*r.eta == doctest::Approx(0.25));
  }

  TEST_CASE("mk headline") {
    const auto r = run_experiment(cfg({{"experiment", "mk"}, {"k", "2"}, {"degree", "0"}}));
    CHECK(r.headline.find("1.333333333333") != std::string::npos);
  }

  TEST_CASE("CSV header round trip and reproducibility") {
    const auto c = cfg({{"experiment", "gaps"}, {"N", "20000"}, {"eta", "0.5"}, {"set", "kfree:1"}});
    const auto a = run_experiment(c);
    const auto b = run_experiment(c);
    const std::string csv = format_csv(a);
    CHECK(csv == format_csv(b));
    const auto back = config_from_csv_header(csv);
    CHECK(to_key_values(back) == to_key_values(a.config));
    CHECK(format_csv(run_experiment(back)) == csv);
  }

  TEST_CASE("cell formatting") {
    CHECK(format_cell(Cell(std::int64_t{42})) == "42");
    CHECK(format_cell(Cell(0.5)) == "0.5");
    CHECK(format_cell(Cell(std::string("a,b"))) == "\"a,b\"");
  }

  TEST_CASE("outputs on disk") {
    const auto dir = std::filesystem::temp_directory_path() / "sievelab_runner_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto r = run_experiment(cfg({{"experiment", "gaps"}, {"N", "5000"}}));
    const auto paths = write_outputs(r, dir / "g.csv");
    CHECK_FALSE(paths.empty());
    for (const auto& p : paths) CHECK(std::filesystem::exists(p));
    std::ifstream f(paths.front());
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == format_csv(r));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("errors carry their kind") {
    try {
      run_experiment(cfg({{"experiment", "simulate-lemma1"}, {"trials", "10"}, {"N", "1000"}}));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInvalidArgument);
    }
  }
}
