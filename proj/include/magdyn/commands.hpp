// Subcommand implementations behind the magdyn CLI. Each returns a table
// that is rendered as CSV (with a config-echo comment) or JSON.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace magdyn::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kUsage = 1, kVerification = 2, kCapability = 3 };

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int points = 2;

  static GridSpec parse(const std::string& text);  // "min:max:points"
  std::vector<double> values() const;
  std::string str() const;
};

struct RunConfig {
  std::string subcommand;
  int n = 2;
  int k = 2;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<double> eta;
  std::optional<double> phi;
  std::optional<double> xi;
  std::optional<GridSpec> alpha_grid;
  std::optional<GridSpec> gamma_grid;
  std::optional<GridSpec> xi_grid;
  std::string u, v;                 // bitstrings for `slice`
  std::vector<double> site_gammas;  // `mirror --site-gammas`
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  unsigned threads = 0;  // grid workers; 0 = hardware concurrency
  std::string output;
  std::string format = "csv";
  bool kappa_t = false;
  bool verify_lp = false;
  bool allow_n4 = false;
  bool list = false;

  std::string echo() const;
};

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool failed = false;  // a verification inside the command did not hold
  std::string failure;
};

std::string format_double(double v);  // 12 significant digits
std::string render(const Table& t, const RunConfig& cfg);

Table cmd_thresholds(const RunConfig& cfg);
Table cmd_scan(const RunConfig& cfg);
Table cmd_trajectory(const RunConfig& cfg);
Table cmd_rom(const RunConfig& cfg);
Table cmd_extract(const RunConfig& cfg);
Table cmd_classify(const RunConfig& cfg);
Table cmd_dicke(const RunConfig& cfg);
Table cmd_haar(const RunConfig& cfg);
Table cmd_slice(const RunConfig& cfg);
Table cmd_pairing(const RunConfig& cfg);
Table cmd_mirror(const RunConfig& cfg);
Table cmd_verify(const RunConfig& cfg);
// Line-delimited stabilizer records (not a table).
std::vector<std::string> cmd_enumerate(const RunConfig& cfg);

// Dispatch by cfg.subcommand; writes to cfg.output or stdout and returns an exit code.
int run(const RunConfig& cfg);

}  // namespace magdyn::cli
