#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "magdyn/commands.hpp"
#include "magdyn/qcore.hpp"

using namespace magdyn::cli;

namespace {

double num(const Table& t, std::size_t row, const std::string& col) {
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    if (t.columns[j] == col) return std::get<double>(t.rows.at(row).at(j));
  FAIL("missing column " << col);
  return 0.0;
}

std::string text(const Table& t, std::size_t row, const std::string& col) {
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    if (t.columns[j] == col) return std::get<std::string>(t.rows.at(row).at(j));
  FAIL("missing column " << col);
  return {};
}

RunConfig config(const std::string& sub, int n, double alpha) {
  RunConfig cfg;
  cfg.subcommand = sub;
  cfg.n = n;
  cfg.alpha = alpha;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("grid parsing") {
    const auto g = GridSpec::parse("0:1:5");
    CHECK(g.values() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(GridSpec::parse("0.2:0.2:2").values() == std::vector<double>{0.2, 0.2});
    CHECK_THROWS_AS(GridSpec::parse("0.2:0.2:1"), UsageError);
    CHECK_THROWS_AS(GridSpec::parse("1:0:3"), UsageError);
    CHECK(GridSpec::parse(g.str()).values() == g.values());
    CHECK_THROWS_AS(GridSpec::parse("0:1"), UsageError);
    CHECK_THROWS_AS(GridSpec::parse("a:1:3"), UsageError);
  }

  TEST_CASE("number formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(2.0) == "2");
  }

  TEST_CASE("thresholds row") {
    const auto t = cmd_thresholds(config("thresholds", 2, 0.4));
    REQUIRE(t.rows.size() == 1);
    CHECK(num(t, 0, "gamma_minus") == doctest::Approx(0.3236).epsilon(5e-4));
    CHECK(num(t, 0, "gamma_plus") == doctest::Approx(0.5636).epsilon(5e-4));
    CHECK(num(t, 0, "gamma_e") == doctest::Approx(0.4364).epsilon(5e-4));
    CHECK(text(t, 0, "regime") == "II");

    const auto none = cmd_thresholds(config("thresholds", 3, 0.9));
    CHECK(text(none, 0, "regime") == "no-window");
  }

  TEST_CASE("csv and json rendering") {
    auto cfg = config("thresholds", 2, 0.4);
    const auto t = cmd_thresholds(cfg);
    const std::string csv = render(t, cfg);
    CHECK(csv.rfind("# " + cfg.echo() + "\n", 0) == 0);
    CHECK(csv.find("\nn,alpha,") != std::string::npos);

    cfg.format = "json";
    const auto j = nlohmann::json::parse(render(t, cfg));
    CHECK(j["config"] == cfg.echo());
    CHECK(j["columns"].size() == t.columns.size());
    CHECK(j["rows"][0][0] == 2);
  }

  TEST_CASE("repeated runs are byte-identical") {
    auto cfg = config("scan", 2, 0.4);
    cfg.gamma_grid = GridSpec::parse("0:0.99:25");
    CHECK(render(cmd_scan(cfg), cfg) == render(cmd_scan(cfg), cfg));
    auto h = config("haar", 3, 0.0);
    h.samples = 200;
    CHECK(render(cmd_haar(h), h) == render(cmd_haar(h), h));
  }

  TEST_CASE("threaded grids match the serial result") {
    auto cfg = config("scan", 2, 0.4);
    cfg.alpha_grid = GridSpec::parse("0.1:0.7:4");
    cfg.gamma_grid = GridSpec::parse("0:1:9");
    cfg.verify_lp = true;
    cfg.threads = 1;
    const std::string serial = render(cmd_scan(cfg), cfg);
    cfg.threads = 4;
    CHECK(render(cmd_scan(cfg), cfg) == serial);

    auto bad = config("rom", 4, 0.4);
    bad.gamma_grid = GridSpec::parse("0:1:6");
    bad.threads = 3;
    bad.gamma_grid->max = 1.5;
    CHECK_THROWS_AS(cmd_rom(bad), magdyn::DomainError);
  }

  TEST_CASE("haar golden output") {
    RunConfig cfg;
    cfg.subcommand = "haar";
    cfg.n = 3;
    cfg.samples = 1000;
    cfg.seed = 42;
    const std::string golden = slurp(std::string(MAGDYN_GOLDEN_DIR) + "/haar_n3_samples1000_seed42.csv");
    REQUIRE_FALSE(golden.empty());
    CHECK(render(cmd_haar(cfg), cfg) == golden);
  }

  TEST_CASE("robustness with LP verification") {
    auto cfg = config("rom", 2, 0.4);
    cfg.gamma_grid = GridSpec::parse("0:0.95:7");
    cfg.verify_lp = true;
    const auto t = cmd_rom(cfg);
    CHECK_FALSE(t.failed);
    CHECK(t.rows.size() == 7);

    auto big = config("rom", 4, 0.4);
    big.gamma = 0.3;
    big.verify_lp = true;
    CHECK_THROWS_AS(cmd_rom(big), magdyn::CapabilityError);
  }

  TEST_CASE("enumerate emits one record per state") {
    RunConfig cfg;
    cfg.subcommand = "enumerate";
    cfg.n = 2;
    CHECK(cmd_enumerate(cfg).size() == 60);
  }

  TEST_CASE("run dispatch") {
    auto cfg = config("rom", 5, 0.4);
    cfg.gamma = 0.2;
    cfg.verify_lp = true;
    cfg.output = "/dev/null";
    CHECK_THROWS_AS(run(cfg), magdyn::CapabilityError);
    cfg = config("thresholds", 2, 0.4);
    cfg.output = "/dev/null";
    CHECK(run(cfg) == kOk);
    cfg.subcommand = "nope";
    CHECK_THROWS_AS(run(cfg), UsageError);
  }
}
