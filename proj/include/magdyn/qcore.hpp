// Dense density-matrix core: states, single-qubit channels lifted site by
// site, partial transpose, negativity, concurrence and Pauli moments.
//
// Bit convention: qubit 0 is the most significant bit of a basis index, so
// |x_0 x_1 ... x_{n-1}> has index sum_q x_q 2^{n-1-q}.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace magdyn {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr int kMaxQubits = 8;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Requested size exceeds what an operation supports (maps to CLI exit 3).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double hermitian = 1e-12;
  double trace = 1e-12;
  double psd_floor = -1e-10;
  double completeness = 1e-12;
  double ppt = 1e-10;  // negativity below this counts as PPT
};
inline constexpr Tolerances kTol{};

inline int bit_of(std::uint64_t x, int q, int n) { return static_cast<int>((x >> (n - 1 - q)) & 1U); }
inline std::uint64_t site_mask(int q, int n) { return std::uint64_t{1} << (n - 1 - q); }
inline int weight(std::uint64_t x) { return __builtin_popcountll(x); }

class DensityOperator {
 public:
  // Validates Hermiticity, unit trace and the PSD floor.
  DensityOperator(int n, Matrix m);

  static DensityOperator pure(const Vector& psi);
  static DensityOperator basis_state(int n, std::uint64_t x);
  // Skips the eigenvalue check; for outputs of maps that preserve validity.
  static DensityOperator trusted(int n, Matrix m);

  int qubits() const { return n_; }
  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(Index i, Index j) const { return m_(i, j); }

 private:
  DensityOperator() = default;
  int n_ = 0;
  Matrix m_;
};

struct KrausChannel {
  KrausChannel(int n, std::vector<Matrix> ops);
  int n;
  std::vector<Matrix> ops;
};

KrausChannel amplitude_damping_kraus(double gamma);
KrausChannel dephasing_kraus(double p);
// ρ01 -> λ ρ01, ρ11 -> (1-γ) ρ11; requires |λ|^2 <= 1-γ.
KrausChannel phase_covariant_kraus(double gamma, cplx lambda);

// Coherence map λ(γ) of a phase-covariant damping channel, with
// S(γ) = |λ(γ)|^2 / (1-γ) the normalized coherence profile.
class PhaseCovariantProfile {
 public:
  enum class Kind { PureAD, DephasedAD, PowerLaw, PhaseTwist, Custom };

  static PhaseCovariantProfile pure_ad();
  static PhaseCovariantProfile dephased(double eta);  // S ≡ η
  static PhaseCovariantProfile power_law(double a);   // λ = (1-γ)^a, a >= 1/2
  static PhaseCovariantProfile phase_twist(double phi);
  static PhaseCovariantProfile custom(std::function<cplx(double)> lambda, bool real_valued = true);

  Kind kind() const { return kind_; }
  const std::vector<double>& parameters() const { return params_; }
  bool is_real() const { return real_; }
  // Throws DomainError if |λ|^2 > 1-γ.
  cplx lambda(double gamma) const;
  double profile(double gamma) const;
  KrausChannel channel(double gamma) const;

 private:
  PhaseCovariantProfile(Kind k, std::vector<double> p, std::function<cplx(double)> f, bool real)
      : kind_(k), params_(std::move(p)), fn_(std::move(f)), real_(real) {}
  Kind kind_;
  std::vector<double> params_;
  std::function<cplx(double)> fn_;
  bool real_;
};

DensityOperator apply_local_channel(const DensityOperator& rho, const KrausChannel& single_qubit);
DensityOperator apply_local_channel(const DensityOperator& rho, const std::vector<KrausChannel>& per_site);
DensityOperator apply_local_channel(const DensityOperator& rho,
                                    const std::function<KrausChannel(double)>& family,
                                    const std::vector<double>& site_params);
DensityOperator apply_local_damping(const DensityOperator& rho, double gamma);
DensityOperator apply_local_damping(const DensityOperator& rho, const std::vector<double>& site_gammas);

// Environment output of the Stinespring dilation of AD(γ), one environment
// qubit per site.
DensityOperator complementary_ad_output(const DensityOperator& rho_in, double gamma);
DensityOperator complementary_ad_output(const DensityOperator& rho_in, const std::vector<double>& site_gammas);

Matrix partial_transpose(const DensityOperator& rho, const std::vector<int>& subset);
double negativity(const DensityOperator& rho, const std::vector<int>& subset);
double concurrence(const DensityOperator& rho);

// Reduced state on `keep` (kept in the given order).
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);

// Pauli index: base-4 digits per qubit (I=0, X=1, Y=2, Z=3), qubit 0 most significant.
struct PauliMasks {
  std::uint64_t x;
  std::uint64_t z;
};
PauliMasks pauli_masks(std::uint64_t index, int n);
std::string pauli_label(std::uint64_t index, int n);
double pauli_expectation(const Matrix& rho, PauliMasks p);
std::vector<double> pauli_moments(const DensityOperator& rho);
double srenyi2_linearized(const DensityOperator& rho);

// Bloch vector of a 2x2 density matrix.
Eigen::Vector3d bloch_vector(const Matrix& rho2);

// α|0^n> + β|1^n> with β = sqrt(1-α²).
Vector ghz_vector(int n, double alpha);

}  // namespace magdyn
