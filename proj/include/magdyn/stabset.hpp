// Pure stabilizer states in affine form, the LP membership/robustness
// oracles built on them, and closed-form obstructions and witnesses.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magdyn/lp.hpp"
#include "magdyn/qcore.hpp"

namespace magdyn {

// Amplitude i^{l.u} (-1)^{sum_{i<j} Q_ij u_i u_j} 2^{-m/2} at offset ^ (u . basis).
struct StabilizerState {
  int n = 0;
  int m = 0;
  std::vector<std::uint32_t> basis;          // m rows, reduced row echelon
  std::uint32_t offset = 0;                  // coset representative, zero on pivots
  std::vector<std::uint8_t> linear_phase;    // Z4 exponents, length m
  std::vector<std::uint8_t> quadratic_phase; // bits for pairs (0,1),(0,2),...,(m-2,m-1)

  std::vector<std::uint32_t> support() const;
  std::string record() const;  // one-line text form used by the CLI
};

std::vector<StabilizerState> enumerate_stabilizer_states(int n);
// Expected count 2^n prod_{j=1..n}(2^j+1).
std::uint64_t stabilizer_count(int n);
Vector materialize(const StabilizerState& s);

// Enumerated states together with their integer Pauli coordinates.
class StabilizerDictionary {
 public:
  explicit StabilizerDictionary(int n);
  int qubits() const { return n_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<StabilizerState>& states() const { return states_; }
  // Nonzero <P> entries (Pauli index, ±1) for state j.
  const std::vector<std::pair<int, int>>& coordinates(std::size_t j) const { return coords_[j]; }

 private:
  int n_;
  std::vector<StabilizerState> states_;
  std::vector<std::vector<std::pair<int, int>>> coords_;
};

struct MembershipResult {
  bool inside = false;
  double infeasibility = 0.0;  // phase-one optimum
  std::vector<std::pair<std::size_t, double>> weights;  // convex decomposition when inside
};

struct LpCertificate {
  double value = 0.0;
  std::vector<std::pair<std::size_t, double>> coefficients;  // signed weights
  double residual = 0.0;     // max |sum q_j σ_j - ρ|
  double duality_gap = 0.0;
  std::vector<double> dual;  // Pauli-coordinate witness
  int iterations = 0;
};

struct LpConfig {
  bool allow_n4 = false;  // four-qubit robustness: 256 rows x 73440 columns
  double membership_tol = 1e-7;
};

MembershipResult membership_lp(const DensityOperator& rho, const StabilizerDictionary& dict, const LpConfig& cfg = {});
LpCertificate robustness_lp(const DensityOperator& rho, const StabilizerDictionary& dict, const LpConfig& cfg = {});

// First (x, y) with x < y and |ρ_xy| > min(ρ_xx, ρ_yy) + 1e-12.
std::optional<std::pair<std::uint64_t, std::uint64_t>> pair_obstruction(const DensityOperator& rho);

// W_{s,j} = I + s(|0^n><1^n| + h.c.) - 2|j^n><j^n|.
Matrix ghzx_witness(int n, int s, int j);
double ghzx_witness_value(const DensityOperator& rho, int s, int j);
// max_j |<φ_j|W|φ_j>| over the dictionary.
double witness_max_abs(const Matrix& witness, const StabilizerDictionary& dict);
bool validate_witness_feasibility(const Matrix& witness, const StabilizerDictionary& dict);

struct RowDominance {
  bool inside = true;
  std::optional<int> failing_row;  // site index of the first violated row
};
// ρ supported on weight 0 and 1 with a real single-excitation block.
RowDominance row_dominance(const DensityOperator& rho);

bool octahedron_membership(const Eigen::Vector3d& bloch);
double single_qubit_rom(const Eigen::Vector3d& bloch);

// Four-qubit witness on E = {0000} ∪ weight-2 strings.
Matrix we_witness();
double we_witness_value(const DensityOperator& rho);

}  // namespace magdyn
