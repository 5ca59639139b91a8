#include "magdyn/families.hpp"

#include <algorithm>
#include <cmath>

#include "magdyn/ghzx.hpp"
#include "magdyn/roots.hpp"

namespace magdyn {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [0,1]");
}

std::uint32_t parse_bits(const std::string& s) {
  if (s.empty() || s.size() > static_cast<std::size_t>(kMaxQubits)) throw DomainError("bitstring length must be 1..8");
  std::uint32_t v = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw DomainError("bitstring must contain only 0 and 1");
    v = (v << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return v;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix lift(const Matrix& op, int site, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n; ++q) out = kron(out, q == site ? op : Matrix::Identity(2, 2));
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::Outside: return "outside";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Vector dicke_state(const DickeSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxQubits) throw DomainError("n must lie in [1,8]");
  if (spec.k < 0 || spec.k > spec.n) throw DomainError("k must lie in [0,n]");
  const Index d = Index{1} << spec.n;
  Vector v = Vector::Zero(d);
  const double amp = 1.0 / std::sqrt(binomial(spec.n, spec.k));
  for (Index x = 0; x < d; ++x)
    if (weight(static_cast<std::uint64_t>(x)) == spec.k) v(x) = amp;
  return v;
}

DensityOperator kraus_branch_sum(const Vector& psi, double gamma) {
  check_gamma(gamma);
  const DensityOperator in = DensityOperator::pure(psi);
  const Index d = in.dim();
  const double q = 1.0 - gamma;
  Matrix rho = Matrix::Zero(d, d);
  for (std::uint64_t jset = 0; jset < static_cast<std::uint64_t>(d); ++jset) {
    Vector branch = Vector::Zero(d);
    const int nj = weight(jset);
    for (Index y = 0; y < d; ++y) {
      const auto uy = static_cast<std::uint64_t>(y);
      if (psi(y) == 0.0 || (jset & ~uy) != 0) continue;
      const double amp = std::sqrt(std::pow(gamma, nj) * std::pow(q, weight(uy) - nj));
      branch(static_cast<Index>(uy & ~jset)) += amp * psi(y);
    }
    rho += branch * branch.adjoint();
  }
  return DensityOperator::trusted(in.qubits(), 0.5 * (rho + rho.adjoint()));
}

DensityOperator dicke_trajectory(int n, int k, double gamma) {
  if (n > 6) throw CapabilityError("Dicke trajectories limited to n <= 6");
  return kraus_branch_sum(dicke_state({n, k}), gamma);
}

double antiw_threshold(int n) {
  if (n == 3) return 0.5 * (std::sqrt(3.0) - 1.0);
  if (n == 4) return 0.5;
  throw CapabilityError("exact anti-W thresholds are known only for n = 3, 4");
}

Verdict antiw_membership(int n, double gamma) {
  check_gamma(gamma);
  if (n < 3) throw DomainError("anti-W family starts at n = 3");
  if (gamma == 1.0) return Verdict::Inside;
  if (n <= 4) return gamma >= antiw_threshold(n) ? Verdict::Inside : Verdict::Outside;
  return gamma < 0.5 ? Verdict::Outside : Verdict::Unknown;
}

AntiW3Decomposition antiw3_decomposition(double gamma) {
  check_gamma(gamma);
  const double q = 1.0 - gamma;
  AntiW3Decomposition dec{};
  dec.t_weight = 2.0 * gamma * q / 3.0;
  dec.s_weight = 2.0 * q * q / 3.0;
  dec.vacuum_weight = gamma * gamma - q * q / 3.0;
  dec.convex = dec.t_weight >= 0.0 && dec.s_weight >= 0.0 && dec.vacuum_weight >= 0.0;

  Matrix m = Matrix::Zero(8, 8);
  const double s2 = 1.0 / std::sqrt(2.0);
  const Index e[3] = {4, 2, 1};  // |100>, |010>, |001>
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Vector t = Vector::Zero(8);
      t(e[i]) = s2;
      t(e[j]) = s2;
      m += dec.t_weight * t * t.adjoint();
    }
  for (double sign : {1.0, -1.0}) {
    Vector s = Vector::Zero(8);
    s(0) = 0.5 * sign;
    s(3) = s(5) = s(6) = 0.5;
    m += dec.s_weight * s * s.adjoint();
  }
  m(0, 0) += dec.vacuum_weight;
  dec.residual = (m - dicke_trajectory(3, 2, gamma).matrix()).cwiseAbs().maxCoeff();
  return dec;
}

double antiw3_rom_upper(double gamma) {
  check_gamma(gamma);
  const double q = 1.0 - gamma;
  return 1.0 + (2.0 / 3.0) * std::max(0.0, q * q - 3.0 * gamma * gamma);
}

DickeObstruction interior_dicke_obstruction(int n, int k, double gamma) {
  check_gamma(gamma);
  if (n > 6) throw CapabilityError("Dicke trajectories limited to n <= 6");
  if (k < 2 || k > n - 2) throw DomainError("interior Dicke weight must satisfy 2 <= k <= n-2");
  DickeObstruction res;
  if (gamma == 1.0) {
    res.inside = true;
    return res;
  }
  const int s = k - 1;
  const int rest = n - s;
  const DensityOperator rho = dicke_trajectory(n, k, gamma);
  const Index dr = Index{1} << rest;
  const Index top = ((Index{1} << s) - 1) << rest;
  Matrix block = rho.matrix().block(top, top, dr, dr);
  res.reduction_probability = block.trace().real();
  res.expected_probability = std::pow(1.0 - gamma, s) * binomial(n - s, k - s) / binomial(n, k);
  block /= res.reduction_probability;
  res.reduction_residual = (block - dicke_trajectory(rest, k - s, gamma).matrix()).cwiseAbs().maxCoeff();
  const RowDominance rd = row_dominance(DensityOperator::trusted(rest, block));
  res.inside = rd.inside;
  res.failing_row = rd.failing_row;
  return res;
}

bool generalized_w_membership(const std::vector<double>& weights, double gamma) {
  check_gamma(gamma);
  const int n = static_cast<int>(weights.size());
  if (n < 1 || n > kMaxQubits) throw DomainError("need between 1 and 8 weights");
  double norm = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw DomainError("weights must be nonnegative");
    norm += w * w;
  }
  if (std::abs(norm - 1.0) > 1e-12) throw DomainError("weights must have unit Euclidean norm");
  if (gamma == 1.0) return true;
  const Index d = Index{1} << n;
  Vector w = Vector::Zero(d);
  for (int i = 0; i < n; ++i) w(static_cast<Index>(site_mask(i, n))) = weights[i];
  Matrix m = (1.0 - gamma) * w * w.adjoint();
  m(0, 0) += gamma;
  return row_dominance(DensityOperator::trusted(n, m)).inside;
}

double family_b_rom(double alpha, double gamma) {
  check_gamma(gamma);
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const double a2 = alpha * alpha, b2 = 1.0 - a2;
  return 1.0 + 2.0 * (1.0 - gamma) * (alpha * std::sqrt(b2) - std::min(a2, b2));
}

TwoTermCat two_term_cat_analysis(const std::string& xs, const std::string& ys, double alpha, double gamma) {
  check_gamma(gamma);
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  if (xs.size() != ys.size()) throw DomainError("bitstrings must have equal length");
  const std::uint32_t x = parse_bits(xs), y = parse_bits(ys);
  if (x == y) throw DomainError("bitstrings must differ");
  const int n = static_cast<int>(xs.size());
  const double beta = std::sqrt(1.0 - alpha * alpha);
  TwoTermCat res;
  res.comparable = (x & ~y) == 0 || (y & ~x) == 0;
  if (res.comparable) {
    const int d = weight(x ^ y);
    const double a = (x & ~y) == 0 ? alpha : beta;  // amplitude on the lower string
    res.reduced_d = d;
    res.reduced_alpha = a;
    if (gamma == 1.0) {
      res.membership = Verdict::Inside;
    } else if (d >= 2) {
      res.membership = membership_closed(ghzx_point(d, a, gamma)) ? Verdict::Inside : Verdict::Outside;
    } else {
      const double b = std::sqrt(1.0 - a * a);
      const double p0 = a * a + b * b * gamma, p1 = b * b * (1.0 - gamma);
      res.membership = ghzx_membership(p0, p1, a * b * std::sqrt(1.0 - gamma)) ? Verdict::Inside : Verdict::Outside;
    }
    return res;
  }

  Vector psi = Vector::Zero(Index{1} << n);
  psi(x) = alpha;
  psi(y) = beta;
  const DensityOperator rho = apply_local_damping(DensityOperator::pure(psi), gamma);
  res.saturation_residual = std::abs(rho(x, x).real() * rho(y, y).real() - std::norm(rho(x, y)));
  const int wx = weight(x), wy = weight(y);
  if (wx == wy) {
    res.every_gamma_candidate = std::abs(alpha - beta) <= 1e-12;
  } else {
    const double q = std::pow(alpha * alpha / (beta * beta), 1.0 / (wy - wx));
    if (q > 0.0 && q <= 1.0) res.candidate_gamma = 1.0 - q;
  }
  if (gamma == 1.0)
    res.membership = Verdict::Inside;
  else
    res.membership = pair_obstruction(rho) ? Verdict::Outside : Verdict::Unknown;
  return res;
}

Vector affine_plane_input(int n, std::uint32_t u, std::uint32_t v, double alpha) {
  if (n < 2 || n > kMaxQubits) throw DomainError("n must lie in [2,8]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const std::uint32_t lim = 1U << n;
  if (u == 0 || v == 0 || u == v || u >= lim || v >= lim) throw DomainError("u, v must be distinct nonzero words");
  Vector psi = Vector::Zero(lim);
  const double b = std::sqrt(1.0 - alpha * alpha) / std::sqrt(3.0);
  psi(0) = alpha;
  psi(u) = b;
  psi(v) = b;
  psi(u ^ v) = b;
  return psi;
}

AffineSlice affine_plane_slice(int n, std::uint32_t u, std::uint32_t v, double alpha, double gamma) {
  check_gamma(gamma);
  if (n < 2 || n > 32) throw DomainError("n must lie in [2,32]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const std::uint64_t lim = std::uint64_t{1} << n;
  if (u == 0 || v == 0 || u == v || u >= lim || v >= lim) throw DomainError("u, v must be distinct nonzero words");
  const int k = weight(u);
  if (weight(v) != k || weight(u ^ v) != k) throw DomainError("plane words must share one Hamming weight");
  AffineSlice s;
  s.k = k;
  const double b = std::sqrt(1.0 - alpha * alpha);
  const double q = 1.0 - gamma;
  s.p0 = alpha * alpha + b * b * std::pow(gamma, k);
  s.p_l = b * b * std::pow(q, k);
  s.c_l = alpha * b * std::pow(q, 0.5 * k);
  s.membership = gamma == 1.0 || (s.p0 >= s.p_l / 3.0 - 1e-14 && s.c_l <= s.p_l / std::sqrt(3.0) + 1e-14);
  const double r = alpha / b;
  const double s3r = std::sqrt(3.0) * r;
  if (std::abs(s3r - 1.0) <= 1e-12) {
    s.gamma_minus = 0.0;
    s.gamma_plus = 0.0;
  } else if (s3r < 1.0) {
    const double gp = 1.0 - std::pow(s3r, 2.0 / k);
    s.gamma_plus = gp;
    s.gamma_minus = bisect([&](double g) { return r * r + std::pow(g, k) - std::pow(1.0 - g, k) / 3.0; }, 0.0, gp);
  }
  return s;
}

std::pair<double, double> vacuum_antiw_thresholds(double r) {
  if (!(r > 0.0 && r <= 1.0 / std::sqrt(3.0) + 1e-15)) throw DomainError("r must lie in (0, 1/sqrt3]");
  return {0.5 * (std::sqrt(std::max(0.0, 3.0 - 6.0 * r * r)) - 1.0), 1.0 - std::sqrt(3.0) * r};
}

Matrix pairing_hamiltonian(double xi) {
  constexpr int n = 3;
  Matrix sp = Matrix::Zero(2, 2), sm = Matrix::Zero(2, 2), num = Matrix::Zero(2, 2);
  sp(1, 0) = 1.0;
  sm(0, 1) = 1.0;
  num(1, 1) = 1.0;
  Matrix nt = Matrix::Zero(8, 8);
  for (int i = 0; i < n; ++i) nt += lift(num, i, n);
  const Matrix shift = nt - 2.0 * Matrix::Identity(8, 8);
  Matrix h = shift * shift;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      h -= xi * (lift(sp, i, n) * lift(sp, j, n) + lift(sm, i, n) * lift(sm, j, n));
  return h;
}

PairingGroundState pairing_ground_state(double xi) {
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  PairingGroundState g;
  g.xi = xi;
  g.valid = xi < std::sqrt(3.0) / 2.0;
  g.r = std::sqrt(3.0) * xi / (2.0 + std::sqrt(4.0 + 3.0 * xi * xi));
  g.alpha = g.r / std::sqrt(1.0 + g.r * g.r);
  g.beta = 1.0 / std::sqrt(1.0 + g.r * g.r);
  g.state = Vector::Zero(8);
  g.state(0) = g.alpha;
  g.state(3) = g.state(5) = g.state(6) = g.beta / std::sqrt(3.0);
  g.energy_even = 2.0 - std::sqrt(4.0 + 3.0 * xi * xi);
  g.energy_odd = 1.0 - std::sqrt(3.0) * xi;

  Eigen::SelfAdjointEigenSolver<Matrix> es(pairing_hamiltonian(xi));
  g.energy = es.eigenvalues()(0);
  const Vector ground = es.eigenvectors().col(0);
  g.overlap = std::norm(g.state.dot(ground));
  g.r_dense = std::abs(ground(0)) / (std::sqrt(3.0) * std::abs(ground(3)));
  return g;
}

ClassificationRecord classify_stabilizer(const StabilizerState& s) {
  ClassificationRecord rec{s, StabClass::Generator, {}};
  for (auto x : s.support()) rec.weight_profile.insert(weight(x));
  rec.label = rec.weight_profile.size() == 1 ? StabClass::Insulator : StabClass::Generator;
  return rec;
}

ClassCounts classify_all(int n) {
  ClassCounts c;
  for (const auto& s : enumerate_stabilizer_states(n)) {
    if (classify_stabilizer(s).label == StabClass::Insulator)
      ++c.insulators;
    else
      ++c.generators;
  }
  return c;
}

std::vector<GammaVerdict> generator_dynamics_check(const StabilizerState& s, const std::vector<double>& gammas,
                                                   const StabilizerDictionary& dict) {
  if (s.n > 3) throw CapabilityError("generator dynamics check limited to n <= 3");
  if (dict.qubits() != s.n) throw std::invalid_argument("dictionary size does not match state");
  const DensityOperator in = DensityOperator::pure(materialize(s));
  std::vector<GammaVerdict> out;
  for (double g : gammas) {
    check_gamma(g);
    if (g == 0.0 || g == 1.0) {
      out.push_back({g, true, "endpoint"});
      continue;
    }
    const DensityOperator rho = apply_local_damping(in, g);
    if (pair_obstruction(rho)) {
      out.push_back({g, false, "pair"});
      continue;
    }
    out.push_back({g, membership_lp(rho, dict).inside, "lp"});
  }
  return out;
}

Vector haar_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(Index{1} << n);
  for (Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v / v.norm();
}

bool endpoint_pair_violated(const Vector& a, double gamma) {
  check_gamma(gamma);
  const Index d = a.size();
  int n = 0;
  while ((Index{1} << n) < d) ++n;
  const Index y = d - 1;
  const double q = 1.0 - gamma;
  const double ryy = std::norm(a(y)) * std::pow(q, n);
  for (Index x = 0; x < y; ++x) {
    const double rxy = std::abs(a(x)) * std::abs(a(y)) * std::pow(q, 0.5 * (weight(static_cast<std::uint64_t>(x)) + n));
    if (rxy > ryy) return true;
  }
  return false;
}

HaarStats haar_endpoint_test(int n, std::size_t samples, std::uint64_t seed, const std::vector<double>& gammas) {
  if (n < 1 || n > 6) throw CapabilityError("Haar endpoint test limited to n <= 6");
  if (samples == 0) throw DomainError("need at least one sample");
  HaarStats st;
  st.n = n;
  st.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    const Vector a = haar_state(n, rng);
    bool all = true;
    for (double g : gammas)
      if (g < 1.0 && !endpoint_pair_violated(a, g)) {
        all = false;
        break;
      }
    if (all) ++st.violating_all;
    Index arg;
    a.cwiseAbs().maxCoeff(&arg);
    if (arg == a.size() - 1) ++st.top_largest;
  }
  st.fraction = static_cast<double>(st.violating_all) / static_cast<double>(samples);
  st.bound = 1.0 - std::pow(2.0, -n);
  st.sigma = std::sqrt(st.bound * (1.0 - st.bound) / static_cast<double>(samples));
  st.passes = st.fraction >= st.bound - 3.0 * st.sigma;
  return st;
}

}  // namespace magdyn
