// magdyn: reproducible CSV/JSON artifacts for magic dynamics under local damping.
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "magdyn/commands.hpp"
#include "magdyn/lp.hpp"
#include "magdyn/qcore.hpp"
#include "magdyn/stabset.hpp"

namespace {

using magdyn::cli::GridSpec;
using magdyn::cli::RunConfig;

struct RawFlags {
  std::string alpha_grid, gamma_grid, xi_grid, site_gammas;
  bool count = false;
};

void add_common(CLI::App* sub, RunConfig& cfg, RawFlags& raw) {
  sub->add_option("--n", cfg.n, "number of qubits");
  sub->add_option("--alpha", cfg.alpha, "vacuum amplitude");
  sub->add_option("--gamma", cfg.gamma, "damping strength");
  sub->add_option("--alpha-grid", raw.alpha_grid, "min:max:points");
  sub->add_option("--gamma-grid", raw.gamma_grid, "min:max:points");
  sub->add_option("--output,-o", cfg.output, "write to file instead of stdout");
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--kappa-t", cfg.kappa_t, "add kappa*t = -ln(1-gamma) columns");
  sub->add_flag("--verify-lp", cfg.verify_lp, "cross-check against the stabilizer LP");
  sub->add_flag("--allow-n4", cfg.allow_n4, "permit the four-qubit LP");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw magdyn::cli::UsageError("bad number in list: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magic dynamics of multiqubit states under amplitude damping"};
  app.require_subcommand(1);
  RunConfig cfg;
  RawFlags raw;

  const std::vector<std::pair<const char*, const char*>> subs = {
      {"thresholds", "death/rebirth thresholds and regime"},
      {"scan", "membership and robustness over an (alpha, gamma) grid"},
      {"trajectory", "robustness, entanglement and Renyi entropy along gamma"},
      {"rom", "robustness at one point, optionally LP-certified"},
      {"extract", "parity-syndrome extraction to one qubit"},
      {"enumerate", "list pure stabilizer states"},
      {"classify", "insulator/generator classification"},
      {"dicke", "Dicke and anti-W trajectories"},
      {"haar", "Haar endpoint-pair statistics"},
      {"slice", "punctured affine-plane slice"},
      {"pairing", "pairing-Hamiltonian ground states"},
      {"mirror", "system/environment mirror identities"},
      {"verify", "closed-form versus LP certification suite"},
  };
  for (const auto& [name, help] : subs) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, cfg, raw);
    const std::string s = name;
    if (s == "thresholds") {
      sub->add_option("--eta", cfg.eta, "dephasing retention factor");
      sub->add_option("--phi", cfg.phi, "phase-twist angle");
    }
    if (s == "scan" || s == "rom")
      sub->add_option("--threads", cfg.threads, "grid workers (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
    if (s == "dicke") sub->add_option("--k", cfg.k, "excitation number");
    if (s == "enumerate") sub->add_flag("--count", raw.count, "print only the number of states");
    if (s == "classify") sub->add_flag("--list", cfg.list, "one row per state");
    if (s == "haar") {
      sub->add_option("--samples", cfg.samples, "number of Haar samples");
      sub->add_option("--seed", cfg.seed, "RNG seed");
    }
    if (s == "slice") {
      sub->add_option("--u", cfg.u, "first spanning bitstring");
      sub->add_option("--v", cfg.v, "second spanning bitstring");
    }
    if (s == "pairing") {
      sub->add_option("--xi", cfg.xi, "pairing coupling");
      sub->add_option("--xi-grid", raw.xi_grid, "min:max:points");
    }
    if (s == "mirror") sub->add_option("--site-gammas", raw.site_gammas, "comma-separated per-site gammas");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : magdyn::cli::kUsage;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!raw.alpha_grid.empty()) cfg.alpha_grid = GridSpec::parse(raw.alpha_grid);
    if (!raw.gamma_grid.empty()) cfg.gamma_grid = GridSpec::parse(raw.gamma_grid);
    if (!raw.xi_grid.empty()) cfg.xi_grid = GridSpec::parse(raw.xi_grid);
    if (!raw.site_gammas.empty()) cfg.site_gammas = parse_list(raw.site_gammas);
    if (cfg.subcommand == "enumerate" && raw.count) {
      std::cout << magdyn::enumerate_stabilizer_states(cfg.n).size() << '\n';
      return 0;
    }
    return magdyn::cli::run(cfg);
  } catch (const magdyn::CapabilityError& e) {
    std::cerr << "capability limit: " << e.what() << '\n';
    return magdyn::cli::kCapability;
  } catch (const magdyn::cli::VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return magdyn::cli::kVerification;
  } catch (const magdyn::LpError& e) {
    std::cerr << "LP failure: " << e.what() << '\n';
    return magdyn::cli::kVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return magdyn::cli::kUsage;
  }
}
