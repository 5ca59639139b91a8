#include "magdyn/stabset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace magdyn {

namespace {

constexpr double kPairSlack = 1e-12;

int leading_bit(std::uint32_t v) { return 31 - __builtin_clz(v); }

// Reduced row echelon basis (rows sorted by decreasing leading bit) of the span of `gens`.
std::vector<std::uint32_t> rref(std::vector<std::uint32_t> gens) {
  std::vector<std::uint32_t> rows;
  for (auto g : gens) {
    for (auto r : rows)
      if (g & (1U << leading_bit(r))) g ^= r;
    if (g == 0) continue;
    const std::uint32_t lead = 1U << leading_bit(g);
    for (auto& r : rows)
      if (r & lead) r ^= g;
    rows.push_back(g);
  }
  std::sort(rows.begin(), rows.end(), std::greater<>());
  return rows;
}

std::uint32_t reduce(std::uint32_t x, const std::vector<std::uint32_t>& basis) {
  for (auto r : basis)
    if (x & (1U << leading_bit(r))) x ^= r;
  return x;
}

std::vector<std::vector<std::uint32_t>> subspaces(int n, int m) {
  // Each subspace is generated once via its unique RREF basis.
  std::set<std::vector<std::uint32_t>> found;
  std::vector<std::vector<std::uint32_t>> frontier{{}};
  for (int k = 0; k < m; ++k) {
    std::set<std::vector<std::uint32_t>> next;
    for (const auto& b : frontier)
      for (std::uint32_t v = 1; v < (1U << n); ++v) {
        if (reduce(v, b) == 0) continue;
        auto g = b;
        g.push_back(v);
        next.insert(rref(g));
      }
    frontier.assign(next.begin(), next.end());
  }
  return frontier;
}

std::string bits(std::uint32_t v, int n) {
  std::string s;
  for (int q = 0; q < n; ++q) s += ((v >> (n - 1 - q)) & 1U) ? '1' : '0';
  return s;
}

// Global phase fixed so the first nonzero amplitude is real positive.
std::vector<long long> canonical_key(const Vector& v) {
  cplx ref = 0.0;
  for (Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-9) {
      ref = std::abs(v(i)) / v(i);
      break;
    }
  std::vector<long long> key;
  key.reserve(2 * v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const cplx a = v(i) * ref;
    key.push_back(std::llround(a.real() * 1e8));
    key.push_back(std::llround(a.imag() * 1e8));
  }
  return key;
}

double vector_pauli_expectation(const Vector& psi, PauliMasks p) {
  static const cplx kIpow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx acc = 0.0;
  for (Index x = 0; x < psi.size(); ++x) {
    const auto ux = static_cast<std::uint64_t>(x);
    if (psi(x) == 0.0) continue;
    const double sign = (weight(p.z & ux) & 1) ? -1.0 : 1.0;
    acc += std::conj(psi(static_cast<Index>(ux ^ p.x))) * sign * psi(x);
  }
  return (kIpow[weight(p.x & p.z) & 3] * acc).real();
}

LpProblem base_problem(const DensityOperator& rho, const StabilizerDictionary& dict) {
  if (rho.qubits() != dict.qubits()) throw std::invalid_argument("state and dictionary qubit counts differ");
  LpProblem lp;
  lp.rows = 1 << (2 * dict.qubits());
  lp.rhs = pauli_moments(rho);
  return lp;
}

}  // namespace

std::vector<std::uint32_t> StabilizerState::support() const {
  std::vector<std::uint32_t> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint32_t u = 0; u < (1U << m); ++u) {
    std::uint32_t x = offset;
    for (int i = 0; i < m; ++i)
      if ((u >> (m - 1 - i)) & 1U) x ^= basis[i];
    out.push_back(x);
  }
  return out;
}

std::string StabilizerState::record() const {
  std::ostringstream os;
  os << "n=" << n << " m=" << m << " basis=";
  for (int i = 0; i < m; ++i) os << (i ? "," : "") << bits(basis[i], n);
  if (m == 0) os << "-";
  os << " offset=" << bits(offset, n) << " linear=";
  for (auto d : linear_phase) os << static_cast<int>(d);
  if (m == 0) os << "-";
  os << " quadratic=";
  for (auto q : quadratic_phase) os << static_cast<int>(q);
  if (quadratic_phase.empty()) os << "-";
  return os.str();
}

std::uint64_t stabilizer_count(int n) {
  std::uint64_t c = std::uint64_t{1} << n;
  for (int j = 1; j <= n; ++j) c *= (std::uint64_t{1} << j) + 1;
  return c;
}

std::vector<StabilizerState> enumerate_stabilizer_states(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > 4) throw CapabilityError("stabilizer enumeration is limited to n <= 4");
  std::vector<StabilizerState> out;
  std::set<std::vector<long long>> seen;
  for (int m = 0; m <= n; ++m) {
    const int npairs = m * (m - 1) / 2;
    for (const auto& basis : subspaces(n, m)) {
      for (std::uint32_t off = 0; off < (1U << n); ++off) {
        if (reduce(off, basis) != off) continue;
        for (std::uint32_t lin = 0; lin < (1U << (2 * m)); ++lin)
          for (std::uint32_t quad = 0; quad < (1U << npairs); ++quad) {
            StabilizerState s;
            s.n = n;
            s.m = m;
            s.basis = basis;
            s.offset = off;
            for (int i = 0; i < m; ++i) s.linear_phase.push_back(static_cast<std::uint8_t>((lin >> (2 * (m - 1 - i))) & 3U));
            for (int k = 0; k < npairs; ++k) s.quadratic_phase.push_back(static_cast<std::uint8_t>((quad >> (npairs - 1 - k)) & 1U));
            if (seen.insert(canonical_key(materialize(s))).second) out.push_back(std::move(s));
          }
      }
    }
  }
  return out;
}

Vector materialize(const StabilizerState& s) {
  static const cplx kIpow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Vector v = Vector::Zero(Index{1} << s.n);
  const double amp = std::pow(2.0, -0.5 * s.m);
  for (std::uint32_t u = 0; u < (1U << s.m); ++u) {
    std::uint32_t x = s.offset;
    int e = 0, q = 0, k = 0;
    for (int i = 0; i < s.m; ++i) {
      const int ui = (u >> (s.m - 1 - i)) & 1U;
      if (ui) {
        x ^= s.basis[i];
        e += s.linear_phase[i];
      }
      for (int j = i + 1; j < s.m; ++j, ++k)
        if (ui && ((u >> (s.m - 1 - j)) & 1U) && s.quadratic_phase[k]) q ^= 1;
    }
    v(x) = kIpow[e & 3] * (q ? -amp : amp);
  }
  return v;
}

StabilizerDictionary::StabilizerDictionary(int n) : n_(n), states_(enumerate_stabilizer_states(n)) {
  const std::uint64_t npauli = std::uint64_t{1} << (2 * n);
  std::vector<PauliMasks> masks;
  for (std::uint64_t k = 0; k < npauli; ++k) masks.push_back(pauli_masks(k, n));
  coords_.resize(states_.size());
  for (std::size_t j = 0; j < states_.size(); ++j) {
    const Vector psi = materialize(states_[j]);
    for (std::uint64_t k = 0; k < npauli; ++k) {
      const double e = vector_pauli_expectation(psi, masks[k]);
      const double r = std::round(e);
      if (std::abs(e - r) > 1e-9) throw std::logic_error("non-integer Pauli coordinate on a stabilizer state");
      if (r != 0.0) coords_[j].emplace_back(static_cast<int>(k), static_cast<int>(r));
    }
  }
}

MembershipResult membership_lp(const DensityOperator& rho, const StabilizerDictionary& dict, const LpConfig& cfg) {
  LpProblem lp = base_problem(rho, dict);
  for (std::size_t j = 0; j < dict.size(); ++j) {
    std::vector<std::pair<int, double>> col;
    for (auto [r, v] : dict.coordinates(j)) col.emplace_back(r, v);
    lp.add_column(col, 0.0);
  }
  LpOptions opt;
  opt.phase_one_only = true;
  opt.infeasible_threshold = cfg.membership_tol;
  const LpSolution sol = solve_lp(lp, opt);
  MembershipResult res;
  res.infeasibility = sol.phase_one_objective;
  res.inside = sol.status == LpStatus::Optimal;
  if (res.inside)
    for (std::size_t j = 0; j < dict.size(); ++j)
      if (sol.x[j] > 0.0) res.weights.emplace_back(j, sol.x[j]);
  return res;
}

LpCertificate robustness_lp(const DensityOperator& rho, const StabilizerDictionary& dict, const LpConfig& cfg) {
  if (dict.qubits() == 4 && !cfg.allow_n4)
    throw CapabilityError("four-qubit robustness LP requires the allow_n4 opt-in");
  LpProblem lp = base_problem(rho, dict);
  for (double sign : {1.0, -1.0})
    for (std::size_t j = 0; j < dict.size(); ++j) {
      std::vector<std::pair<int, double>> col;
      for (auto [r, v] : dict.coordinates(j)) col.emplace_back(r, sign * v);
      lp.add_column(col, 1.0);
    }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw LpError("robustness LP did not reach an optimum");

  LpCertificate cert;
  cert.value = sol.objective;
  cert.duality_gap = sol.duality_gap;
  cert.dual = sol.dual;
  cert.iterations = sol.iterations;
  const std::size_t n = dict.size();
  Matrix recon = Matrix::Zero(rho.dim(), rho.dim());
  for (std::size_t j = 0; j < n; ++j) {
    const double q = sol.x[j] - sol.x[j + n];
    if (q == 0.0) continue;
    cert.coefficients.emplace_back(j, q);
    const Vector psi = materialize(dict.states()[j]);
    recon += q * psi * psi.adjoint();
  }
  cert.residual = (recon - rho.matrix()).cwiseAbs().maxCoeff();
  return cert;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> pair_obstruction(const DensityOperator& rho) {
  const Index d = rho.dim();
  for (Index x = 0; x < d; ++x)
    for (Index y = x + 1; y < d; ++y) {
      const double bound = std::min(rho(x, x).real(), rho(y, y).real());
      if (std::abs(rho(x, y)) > bound + kPairSlack)
        return std::make_pair(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y));
    }
  return std::nullopt;
}

Matrix ghzx_witness(int n, int s, int j) {
  if (s != 1 && s != -1) throw std::invalid_argument("s must be +1 or -1");
  if (j != 0 && j != 1) throw std::invalid_argument("j must be 0 or 1");
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("unsupported qubit count");
  const Index d = Index{1} << n;
  Matrix w = Matrix::Identity(d, d);
  w(0, d - 1) += static_cast<double>(s);
  w(d - 1, 0) += static_cast<double>(s);
  const Index jj = j ? d - 1 : 0;
  w(jj, jj) -= 2.0;
  return w;
}

double ghzx_witness_value(const DensityOperator& rho, int s, int j) {
  return (ghzx_witness(rho.qubits(), s, j) * rho.matrix()).trace().real();
}

double witness_max_abs(const Matrix& witness, const StabilizerDictionary& dict) {
  double best = 0.0;
  for (const auto& s : dict.states()) {
    const Vector psi = materialize(s);
    best = std::max(best, std::abs(psi.dot(witness * psi)));
  }
  return best;
}

bool validate_witness_feasibility(const Matrix& witness, const StabilizerDictionary& dict) {
  return witness_max_abs(witness, dict) <= 1.0 + 1e-12;
}

RowDominance row_dominance(const DensityOperator& rho) {
  const int n = rho.qubits();
  const Index d = rho.dim();
  for (Index x = 0; x < d; ++x)
    if (weight(static_cast<std::uint64_t>(x)) >= 2 && rho(x, x).real() > 1e-12)
      throw DomainError("state has population above the single-excitation sector");
  std::vector<Index> e(n);
  for (int i = 0; i < n; ++i) e[i] = static_cast<Index>(site_mask(i, n));
  for (int i = 0; i < n; ++i) {
    if (std::abs(rho(0, e[i])) > 1e-12) throw DomainError("vacuum coherence with the single-excitation sector");
    for (int j = 0; j < n; ++j)
      if (std::abs(rho(e[i], e[j]).imag()) > 1e-12) throw DomainError("single-excitation block is not real");
  }
  RowDominance res;
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) off += std::abs(rho(e[i], e[j]).real());
    if (rho(e[i], e[i]).real() < off - 1e-12) {
      res.inside = false;
      res.failing_row = i;
      break;
    }
  }
  return res;
}

bool octahedron_membership(const Eigen::Vector3d& bloch) {
  if (bloch.norm() > 1.0 + 1e-12) throw DomainError("Bloch vector longer than 1");
  return bloch.lpNorm<1>() <= 1.0 + 1e-12;
}

double single_qubit_rom(const Eigen::Vector3d& bloch) {
  if (bloch.norm() > 1.0 + 1e-12) throw DomainError("Bloch vector longer than 1");
  return 1.0 + std::max(0.0, bloch.lpNorm<1>() - 1.0);
}

Matrix we_witness() {
  std::vector<Index> pairs;
  for (Index x = 0; x < 16; ++x)
    if (weight(static_cast<std::uint64_t>(x)) == 2) pairs.push_back(x);
  Matrix w = Matrix::Zero(16, 16);
  w(0, 0) = 3.0;
  for (Index x : pairs) w(x, x) = 1.0;
  for (Index x : pairs)
    for (Index y : pairs) {
      if (x == y) continue;
      const int overlap = weight(static_cast<std::uint64_t>(x & y));
      w(x, y) = overlap == 1 ? -1.0 : 1.0;
    }
  return w;
}

double we_witness_value(const DensityOperator& rho) {
  if (rho.qubits() != 4) throw std::invalid_argument("witness acts on four qubits");
  for (Index x = 1; x < 16; ++x)
    if (weight(static_cast<std::uint64_t>(x)) != 2 && rho(x, x).real() > 1e-12)
      throw DomainError("state leaks outside the vacuum plus weight-two sector");
  return (we_witness() * rho.matrix()).trace().real();
}

}  // namespace magdyn
