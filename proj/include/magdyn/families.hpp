// Trajectory classes beyond GHZ: Dicke and anti-W states, generalized W,
// two-term cats, the punctured affine-plane slice, the pairing Hamiltonian,
// stabilizer insulator/generator classification and the Haar endpoint test.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "magdyn/qcore.hpp"
#include "magdyn/stabset.hpp"

namespace magdyn {

enum class Verdict { Inside, Outside, Unknown };
std::string to_string(Verdict v);

struct DickeSpec {
  int n;
  int k;
};

Vector dicke_state(const DickeSpec& spec);
// Sum over jump sets J of K_J|ψ><ψ|K_J^†, built directly from the branch action.
DensityOperator kraus_branch_sum(const Vector& psi, double gamma);
DensityOperator dicke_trajectory(int n, int k, double gamma);

double antiw_threshold(int n);
// n = 3, 4 exact; n >= 5 only reports outside for γ < 1/2.
Verdict antiw_membership(int n, double gamma);

struct AntiW3Decomposition {
  double t_weight;       // each of the three |T_ij>
  double s_weight;       // each of |S_+>, |S_->
  double vacuum_weight;  // |000>
  bool convex;
  double residual;  // max |decomposition - trajectory|
};
AntiW3Decomposition antiw3_decomposition(double gamma);
double antiw3_rom_upper(double gamma);

struct DickeObstruction {
  bool inside = false;
  std::optional<int> failing_row;
  double reduction_probability = 0.0;  // trace of the |1^s> block
  double expected_probability = 0.0;   // (1-γ)^s C(n-s,k-s)/C(n,k)
  double reduction_residual = 0.0;     // reduced block vs W_{n-s} trajectory
};
DickeObstruction interior_dicke_obstruction(int n, int k, double gamma);

bool generalized_w_membership(const std::vector<double>& weights, double gamma);
double family_b_rom(double alpha, double gamma);

struct TwoTermCat {
  bool comparable = false;
  std::optional<int> reduced_d;
  std::optional<double> reduced_alpha;  // amplitude on the lower string after reduction
  Verdict membership = Verdict::Unknown;
  std::optional<double> candidate_gamma;
  bool every_gamma_candidate = false;  // equal weights and α = β
  double saturation_residual = 0.0;    // |ρ_xx ρ_yy - |ρ_xy|²|
};
// α|x> + β|y> under uniform damping; x, y given as bitstrings.
TwoTermCat two_term_cat_analysis(const std::string& x, const std::string& y, double alpha, double gamma);

struct AffineSlice {
  int k = 0;
  double p0 = 0.0, p_l = 0.0, c_l = 0.0;
  bool membership = false;
  std::optional<double> gamma_minus, gamma_plus;
};
// L = span{u, v}; input α|0^n> + β(|u>+|v>+|u^v>)/sqrt3.
Vector affine_plane_input(int n, std::uint32_t u, std::uint32_t v, double alpha);
AffineSlice affine_plane_slice(int n, std::uint32_t u, std::uint32_t v, double alpha, double gamma);
std::pair<double, double> vacuum_antiw_thresholds(double r);

struct PairingGroundState {
  double xi = 0.0;
  bool valid = false;
  double r = 0.0, alpha = 0.0, beta = 0.0;
  Vector state;
  double energy_even = 0.0, energy_odd = 0.0;
  double energy = 0.0;  // lowest eigenvalue of the dense Hamiltonian
  double overlap = 0.0;
  double r_dense = 0.0;
};
Matrix pairing_hamiltonian(double xi);
PairingGroundState pairing_ground_state(double xi);

enum class StabClass { Insulator, Generator };
struct ClassificationRecord {
  StabilizerState state;
  StabClass label;
  std::set<int> weight_profile;
};
ClassificationRecord classify_stabilizer(const StabilizerState& s);
struct ClassCounts {
  std::size_t insulators = 0;
  std::size_t generators = 0;
};
ClassCounts classify_all(int n);

struct GammaVerdict {
  double gamma;
  bool inside;
  std::string method;  // "endpoint", "pair" or "lp"
};
std::vector<GammaVerdict> generator_dynamics_check(const StabilizerState& s, const std::vector<double>& gammas,
                                                   const StabilizerDictionary& dict);

Vector haar_state(int n, std::mt19937_64& rng);
// Pair-coherence violation at (x, 1^n) from the closed matrix entries.
bool endpoint_pair_violated(const Vector& amplitudes, double gamma);

struct HaarStats {
  int n = 0;
  std::size_t samples = 0;
  std::size_t violating_all = 0;  // violated at every grid γ < 1
  std::size_t top_largest = 0;    // |a_{1^n}| is the largest modulus
  double fraction = 0.0;
  double bound = 0.0;  // 1 - 2^{-n}
  double sigma = 0.0;
  bool passes = false;
};
HaarStats haar_endpoint_test(int n, std::size_t samples, std::uint64_t seed, const std::vector<double>& gammas);

}  // namespace magdyn
