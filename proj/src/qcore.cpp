#include "magdyn/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace magdyn {

namespace {

using Super = Eigen::Matrix4cd;  // (c,d),(a,b) -> out_cd = sum S in_ab

void check_qubits(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
  if (n > kMaxQubits) throw CapabilityError("at most " + std::to_string(kMaxQubits) + " qubits supported");
}

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(name) + " must lie in [0,1]");
}

int qubits_for_dim(Index d) {
  int n = 0;
  while ((Index{1} << n) < d) ++n;
  if ((Index{1} << n) != d) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

Super kraus_superop(const KrausChannel& ch) {
  Super s = Super::Zero();
  for (const auto& k : ch.ops)
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) s(2 * c + d, 2 * a + b) += k(c, a) * std::conj(k(d, b));
  return s;
}

// Canonical dilation V: |0> -> |0>_S|0>_E, |1> -> sqrt(1-γ)|1>_S|0>_E + sqrtγ|0>_S|1>_E.
// Rows are indexed 2*s + e. Returns the map that keeps E and traces out S.
Super environment_superop(double gamma) {
  Eigen::Matrix<cplx, 4, 2> v = Eigen::Matrix<cplx, 4, 2>::Zero();
  v(0, 0) = 1.0;
  v(2, 1) = std::sqrt(1.0 - gamma);
  v(1, 1) = std::sqrt(gamma);
  Super s = Super::Zero();
  for (int e = 0; e < 2; ++e)
    for (int f = 0; f < 2; ++f)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int sys = 0; sys < 2; ++sys) s(2 * e + f, 2 * a + b) += v(2 * sys + e, a) * std::conj(v(2 * sys + f, b));
  return s;
}

void apply_site(Matrix& m, int q, int n, const Super& s) {
  const Index d = m.rows();
  const Index mask = static_cast<Index>(site_mask(q, n));
  for (Index i = 0; i < d; ++i) {
    if (i & mask) continue;
    for (Index j = 0; j < d; ++j) {
      if (j & mask) continue;
      Eigen::Vector4cd in(m(i, j), m(i, j | mask), m(i | mask, j), m(i | mask, j | mask));
      Eigen::Vector4cd out = s * in;
      m(i, j) = out(0);
      m(i, j | mask) = out(1);
      m(i | mask, j) = out(2);
      m(i | mask, j | mask) = out(3);
    }
  }
}

DensityOperator finish(int n, Matrix m) {
  Matrix h = 0.5 * (m + m.adjoint());
  return DensityOperator::trusted(n, std::move(h));
}

void check_subset(const std::vector<int>& subset, int n, bool proper) {
  if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
  std::set<int> seen;
  for (int q : subset) {
    if (q < 0 || q >= n) throw std::invalid_argument("subset index out of range");
    if (!seen.insert(q).second) throw std::invalid_argument("subset has repeated index");
  }
  if (proper && static_cast<int>(subset.size()) == n) throw std::invalid_argument("subset must be a proper subset");
}

}  // namespace

DensityOperator::DensityOperator(int n, Matrix m) : n_(n), m_(std::move(m)) {
  check_qubits(n);
  const Index d = Index{1} << n;
  if (m_.rows() != d || m_.cols() != d) throw std::invalid_argument("matrix dimension does not match qubit count");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kTol.hermitian) throw DomainError("matrix is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > kTol.trace) throw DomainError("trace differs from 1");
  Matrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kTol.psd_floor) throw DomainError("matrix is not positive semidefinite");
  m_ = std::move(h);
}

DensityOperator DensityOperator::pure(const Vector& psi) {
  const int n = qubits_for_dim(psi.size());
  check_qubits(n);
  if (std::abs(psi.norm() - 1.0) > 1e-12) throw DomainError("state vector is not normalized");
  return trusted(n, psi * psi.adjoint());
}

DensityOperator DensityOperator::basis_state(int n, std::uint64_t x) {
  check_qubits(n);
  const Index d = Index{1} << n;
  if (static_cast<Index>(x) >= d) throw std::invalid_argument("basis index out of range");
  Matrix m = Matrix::Zero(d, d);
  m(static_cast<Index>(x), static_cast<Index>(x)) = 1.0;
  return trusted(n, std::move(m));
}

DensityOperator DensityOperator::trusted(int n, Matrix m) {
  DensityOperator r;
  r.n_ = n;
  r.m_ = std::move(m);
  return r;
}

KrausChannel::KrausChannel(int n_, std::vector<Matrix> ops_) : n(n_), ops(std::move(ops_)) {
  check_qubits(n);
  const Index d = Index{1} << n;
  Matrix acc = Matrix::Zero(d, d);
  for (const auto& k : ops) {
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("Kraus operator has wrong dimension");
    acc += k.adjoint() * k;
  }
  if ((acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kTol.completeness)
    throw DomainError("Kraus operators are not complete");
}

KrausChannel amplitude_damping_kraus(double gamma) {
  check_unit_interval(gamma, "gamma");
  Matrix e0 = Matrix::Zero(2, 2), e1 = Matrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - gamma);
  e1(0, 1) = std::sqrt(gamma);
  return KrausChannel(1, {e0, e1});
}

KrausChannel dephasing_kraus(double p) {
  check_unit_interval(p, "p");
  Matrix k0 = std::sqrt(1.0 - p) * Matrix::Identity(2, 2);
  Matrix k1 = Matrix::Zero(2, 2);
  k1(0, 0) = std::sqrt(p);
  k1(1, 1) = -std::sqrt(p);
  return KrausChannel(1, {k0, k1});
}

KrausChannel phase_covariant_kraus(double gamma, cplx lambda) {
  check_unit_interval(gamma, "gamma");
  const double slack = 1.0 - gamma - std::norm(lambda);
  if (slack < -1e-15) throw DomainError("|lambda|^2 exceeds 1-gamma");
  Matrix e0 = Matrix::Zero(2, 2), e1 = Matrix::Zero(2, 2), e2 = Matrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::conj(lambda);
  e1(0, 1) = std::sqrt(gamma);
  e2(1, 1) = std::sqrt(std::max(0.0, slack));
  return KrausChannel(1, {e0, e1, e2});
}

PhaseCovariantProfile PhaseCovariantProfile::pure_ad() {
  return {Kind::PureAD, {}, [](double g) { return cplx(std::sqrt(1.0 - g), 0.0); }, true};
}

PhaseCovariantProfile PhaseCovariantProfile::dephased(double eta) {
  check_unit_interval(eta, "eta");
  return {Kind::DephasedAD, {eta}, [eta](double g) { return cplx(std::sqrt(eta * (1.0 - g)), 0.0); }, true};
}

PhaseCovariantProfile PhaseCovariantProfile::power_law(double a) {
  if (!(a >= 0.5)) throw DomainError("power-law exponent must be >= 1/2");
  return {Kind::PowerLaw, {a}, [a](double g) { return cplx(std::pow(1.0 - g, a), 0.0); }, true};
}

PhaseCovariantProfile PhaseCovariantProfile::phase_twist(double phi) {
  return {Kind::PhaseTwist, {phi}, [phi](double g) { return std::polar(std::sqrt(1.0 - g), -phi); }, false};
}

PhaseCovariantProfile PhaseCovariantProfile::custom(std::function<cplx(double)> lambda, bool real_valued) {
  return {Kind::Custom, {}, std::move(lambda), real_valued};
}

cplx PhaseCovariantProfile::lambda(double gamma) const {
  check_unit_interval(gamma, "gamma");
  const cplx l = fn_(gamma);
  if (std::norm(l) > 1.0 - gamma + 1e-15) throw DomainError("profile violates |lambda|^2 <= 1-gamma");
  return l;
}

double PhaseCovariantProfile::profile(double gamma) const {
  if (!(gamma < 1.0)) throw DomainError("profile S is evaluated on [0,1)");
  return std::norm(lambda(gamma)) / (1.0 - gamma);
}

KrausChannel PhaseCovariantProfile::channel(double gamma) const { return phase_covariant_kraus(gamma, lambda(gamma)); }

DensityOperator apply_local_channel(const DensityOperator& rho, const KrausChannel& single_qubit) {
  return apply_local_channel(rho, std::vector<KrausChannel>(static_cast<size_t>(rho.qubits()), single_qubit));
}

DensityOperator apply_local_channel(const DensityOperator& rho, const std::vector<KrausChannel>& per_site) {
  const int n = rho.qubits();
  if (static_cast<int>(per_site.size()) != n) throw std::invalid_argument("need one channel per site");
  Matrix m = rho.matrix();
  for (int q = 0; q < n; ++q) {
    if (per_site[q].n != 1) throw std::invalid_argument("site channel must act on one qubit");
    apply_site(m, q, n, kraus_superop(per_site[q]));
  }
  return finish(n, std::move(m));
}

DensityOperator apply_local_channel(const DensityOperator& rho, const std::function<KrausChannel(double)>& family,
                                    const std::vector<double>& site_params) {
  if (static_cast<int>(site_params.size()) != rho.qubits()) throw std::invalid_argument("need one parameter per site");
  std::vector<KrausChannel> chans;
  chans.reserve(site_params.size());
  for (double p : site_params) chans.push_back(family(p));
  return apply_local_channel(rho, chans);
}

DensityOperator apply_local_damping(const DensityOperator& rho, double gamma) {
  return apply_local_channel(rho, amplitude_damping_kraus(gamma));
}

DensityOperator apply_local_damping(const DensityOperator& rho, const std::vector<double>& site_gammas) {
  return apply_local_channel(rho, amplitude_damping_kraus, site_gammas);
}

DensityOperator complementary_ad_output(const DensityOperator& rho_in, double gamma) {
  return complementary_ad_output(rho_in, std::vector<double>(static_cast<size_t>(rho_in.qubits()), gamma));
}

DensityOperator complementary_ad_output(const DensityOperator& rho_in, const std::vector<double>& site_gammas) {
  const int n = rho_in.qubits();
  if (static_cast<int>(site_gammas.size()) != n) throw std::invalid_argument("need one gamma per site");
  Matrix m = rho_in.matrix();
  for (int q = 0; q < n; ++q) {
    check_unit_interval(site_gammas[q], "gamma");
    apply_site(m, q, n, environment_superop(site_gammas[q]));
  }
  return finish(n, std::move(m));
}

Matrix partial_transpose(const DensityOperator& rho, const std::vector<int>& subset) {
  const int n = rho.qubits();
  check_subset(subset, n, false);
  std::uint64_t mask = 0;
  for (int q : subset) mask |= site_mask(q, n);
  const Index d = rho.dim();
  Matrix out(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      // swap the subset bits between row and column
      const std::uint64_t ui = static_cast<std::uint64_t>(i), uj = static_cast<std::uint64_t>(j);
      const std::uint64_t ni = (ui & ~mask) | (uj & mask);
      const std::uint64_t nj = (uj & ~mask) | (ui & mask);
      out(static_cast<Index>(ni), static_cast<Index>(nj)) = rho(i, j);
    }
  return out;
}

double negativity(const DensityOperator& rho, const std::vector<int>& subset) {
  check_subset(subset, rho.qubits(), true);
  Matrix pt = partial_transpose(rho, subset);
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, 0.5 * (trace_norm - 1.0));
}

double concurrence(const DensityOperator& rho) {
  if (rho.qubits() != 2) throw std::invalid_argument("concurrence requires two qubits");
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix& r = rho.matrix();
  Matrix tilde = yy * r.conjugate() * yy;
  Eigen::SelfAdjointEigenSolver<Matrix> es(r);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Matrix sq = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  Matrix prod = sq * tilde * sq;
  Eigen::SelfAdjointEigenSolver<Matrix> es2(0.5 * (prod + prod.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> lam(4);
  for (int k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(0.0, es2.eigenvalues()(k)));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  const int n = rho.qubits();
  check_subset(keep, n, false);
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  const int k = static_cast<int>(keep.size());
  const Index dk = Index{1} << k;
  const Index dt = Index{1} << traced.size();
  auto compose = [&](Index a, Index t) {
    std::uint64_t x = 0;
    for (int i = 0; i < k; ++i)
      if ((a >> (k - 1 - i)) & 1) x |= site_mask(keep[i], n);
    const int nt = static_cast<int>(traced.size());
    for (int i = 0; i < nt; ++i)
      if ((t >> (nt - 1 - i)) & 1) x |= site_mask(traced[i], n);
    return static_cast<Index>(x);
  };
  Matrix out = Matrix::Zero(dk, dk);
  for (Index a = 0; a < dk; ++a)
    for (Index b = 0; b < dk; ++b)
      for (Index t = 0; t < dt; ++t) out(a, b) += rho(compose(a, t), compose(b, t));
  return finish(k, std::move(out));
}

PauliMasks pauli_masks(std::uint64_t index, int n) {
  PauliMasks p{0, 0};
  for (int q = 0; q < n; ++q) {
    const auto label = (index >> (2 * (n - 1 - q))) & 3U;
    if (label == 1 || label == 2) p.x |= site_mask(q, n);
    if (label == 2 || label == 3) p.z |= site_mask(q, n);
  }
  return p;
}

std::string pauli_label(std::uint64_t index, int n) {
  static const char kChars[] = "IXYZ";
  std::string s;
  for (int q = 0; q < n; ++q) s += kChars[(index >> (2 * (n - 1 - q))) & 3U];
  return s;
}

double pauli_expectation(const Matrix& rho, PauliMasks p) {
  // P|x> = i^{|x&z|} (-1)^{z.x} |x^xmask>, so Tr(ρP) = sum_x phase(x) ρ_{x, x^a}
  static const cplx kIpow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx base = kIpow[weight(p.x & p.z) & 3];
  cplx acc = 0.0;
  const Index d = rho.rows();
  for (Index x = 0; x < d; ++x) {
    const auto ux = static_cast<std::uint64_t>(x);
    const double sign = (weight(p.z & ux) & 1) ? -1.0 : 1.0;
    acc += sign * rho(x, static_cast<Index>(ux ^ p.x));
  }
  return (base * acc).real();
}

std::vector<double> pauli_moments(const DensityOperator& rho) {
  const int n = rho.qubits();
  if (n > 6) throw CapabilityError("Pauli moments limited to n <= 6");
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  std::vector<double> out(count);
  for (std::uint64_t k = 0; k < count; ++k) out[k] = pauli_expectation(rho.matrix(), pauli_masks(k, n));
  return out;
}

double srenyi2_linearized(const DensityOperator& rho) {
  const auto moments = pauli_moments(rho);
  double s4 = 0.0;
  for (double v : moments) s4 += v * v * v * v;
  const double d = static_cast<double>(rho.dim());
  const double purity = rho.matrix().cwiseAbs2().sum();
  return -std::log(s4 / (d * purity * purity));
}

Eigen::Vector3d bloch_vector(const Matrix& rho2) {
  if (rho2.rows() != 2 || rho2.cols() != 2) throw std::invalid_argument("Bloch vector needs a 2x2 matrix");
  return {2.0 * rho2(0, 1).real(), -2.0 * rho2(0, 1).imag(), (rho2(0, 0) - rho2(1, 1)).real()};
}

Vector ghz_vector(int n, double alpha) {
  check_qubits(n);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
  Vector v = Vector::Zero(Index{1} << n);
  v(0) = alpha;
  v(v.size() - 1) = std::sqrt(1.0 - alpha * alpha);
  return v;
}

}  // namespace magdyn
