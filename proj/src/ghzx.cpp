#include "magdyn/ghzx.hpp"

#include <algorithm>
#include <cmath>

#include "magdyn/roots.hpp"

namespace magdyn {

namespace {

constexpr double kMemberSlack = 1e-14;
constexpr double kBoundaryTol = 1e-12;
constexpr double kSurfaceTol = 1e-12;

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double beta_of(double alpha) { return std::sqrt(1.0 - alpha * alpha); }

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [0,1]");
}

double product(const std::vector<double>& v, bool complement) {
  double p = 1.0;
  for (double g : v) p *= complement ? 1.0 - g : g;
  return p;
}

// Ordering of the three thresholds, used where no closed α boundaries exist.
Regime regime_from_order(double gm, double gp, double ge) {
  if (std::abs(ge - gm) <= kBoundaryTol) return Regime::BoundaryI_II;
  if (std::abs(ge - gp) <= kBoundaryTol) return Regime::BoundaryII_III;
  if (ge < gm) return Regime::I;
  if (ge < gp) return Regime::II;
  return Regime::III;
}

DensityOperator damped_ghz(double alpha, const std::vector<double>& gammas) {
  const int n = static_cast<int>(gammas.size());
  return apply_local_damping(DensityOperator::pure(ghz_vector(n, alpha)), gammas);
}

}  // namespace

GhzXPoint ghzx_point(int n, double alpha, double gamma) {
  if (n < 2 || n > 62) throw DomainError("n must lie in [2,62]");
  check_alpha(alpha);
  check_gamma(gamma);
  GhzXPoint pt;
  pt.n = n;
  pt.alpha = alpha;
  pt.beta = beta_of(alpha);
  pt.gamma = gamma;
  const double b2 = pt.beta * pt.beta;
  const double q = 1.0 - gamma;
  pt.populations.assign(n + 1, 0.0);
  for (int k = 1; k < n; ++k) pt.populations[k] = binomial(n, k) * b2 * std::pow(q, k) * std::pow(gamma, n - k);
  pt.populations[0] = alpha * alpha + b2 * std::pow(gamma, n);
  pt.populations[n] = b2 * std::pow(q, n);
  pt.coherence = alpha * pt.beta * std::pow(q, 0.5 * n);
  return pt;
}

DensityOperator to_density(const GhzXPoint& pt) {
  if (pt.n > kMaxQubits) throw CapabilityError("matrix form limited to 8 qubits");
  const Index d = Index{1} << pt.n;
  Matrix m = Matrix::Zero(d, d);
  for (Index x = 0; x < d; ++x) {
    const int k = weight(static_cast<std::uint64_t>(x));
    m(x, x) = pt.populations[k] / binomial(pt.n, k);
  }
  m(0, d - 1) = pt.coherence;
  m(d - 1, 0) = std::conj(pt.coherence);
  return DensityOperator::trusted(pt.n, std::move(m));
}

bool ghzx_membership(double p0, double p1, cplx c) {
  const double lhs = std::abs(c.real()) + std::abs(c.imag());
  return lhs <= p0 + kMemberSlack && lhs <= p1 + kMemberSlack;
}

bool membership_closed(const GhzXPoint& pt) {
  if (pt.gamma == 1.0) return true;
  return ghzx_membership(pt.p0(), pt.pn(), pt.coherence);
}

double rom(double p0, double p1, double c) {
  if (p0 < 0.0 || p1 < 0.0 || std::abs(c) > std::sqrt(p0 * p1) + 1e-12)
    throw DomainError("endpoint block is not positive semidefinite");
  const double a = std::abs(c);
  return 1.0 + 2.0 * std::max({0.0, a - p0, a - p1});
}

double rom_closed(const GhzXPoint& pt) { return rom(pt.p0(), pt.pn(), std::abs(pt.coherence)); }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
    case Regime::BoundaryI_II: return "I/II-boundary";
    case Regime::BoundaryII_III: return "II/III-boundary";
    case Regime::Critical: return "critical";
    case Regime::NoWindow: return "no-window";
    case Regime::Degenerate: return "degenerate";
  }
  return "?";
}

double f_n(int n, double alpha, double gamma) {
  const double b = beta_of(alpha);
  return alpha * alpha + b * b * std::pow(gamma, n) - alpha * b * std::pow(1.0 - gamma, 0.5 * n);
}

std::pair<double, double> alpha_boundaries(int n) {
  const double a1 = 1.0 / std::sqrt(1.0 + std::pow(1.0 + std::pow(2.0, 2.0 / n), n));
  const double a2 = 1.0 / std::sqrt(1.0 + std::pow(2.0, n));
  return {a1, a2};
}

ThresholdSet thresholds(int n, double alpha) {
  if (n < 2) throw DomainError("n must be >= 2");
  check_alpha(alpha);
  ThresholdSet t;
  t.n = n;
  t.alpha = alpha;
  const double b = beta_of(alpha);
  t.r = alpha / b;
  std::tie(t.alpha1, t.alpha2) = alpha_boundaries(n);
  const double tau = 2.0 / n;
  t.gamma_e = std::min(1.0, std::pow(t.r, tau));
  t.gamma_gme = std::min(1.0, std::pow(t.r / (std::pow(2.0, n - 1) - 1.0), tau));
  if (std::abs(t.r - 1.0) <= kBoundaryTol) {
    t.regime = Regime::Critical;
    return t;
  }
  if (t.r > 1.0) {
    t.regime = Regime::NoWindow;
    return t;
  }
  const double gp = 1.0 - std::pow(t.r, tau);
  t.gamma_plus = gp;
  t.gamma_minus = bisect([&](double g) { return f_n(n, alpha, g); }, 0.0, gp);
  if (std::abs(alpha - t.alpha1) <= kBoundaryTol)
    t.regime = Regime::BoundaryI_II;
  else if (std::abs(alpha - t.alpha2) <= kBoundaryTol)
    t.regime = Regime::BoundaryII_III;
  else if (alpha < t.alpha1)
    t.regime = Regime::I;
  else if (alpha < t.alpha2)
    t.regime = Regime::II;
  else
    t.regime = Regime::III;
  return t;
}

WindowBound window_width_and_bound(int n, double alpha) {
  const ThresholdSet t = thresholds(n, alpha);
  if (!t.reentrant()) throw DomainError("window bound requires the re-entrant regime");
  const double gp = *t.gamma_plus;
  WindowBound w{gp - *t.gamma_minus, (2.0 / n) * std::pow(t.r, 2.0 / n - 2.0) * std::pow(gp, n)};
  if (w.width > w.bound * (1.0 + 1e-9)) throw std::logic_error("window width exceeds its analytic bound");
  return w;
}

MirrorPair resource_mirror_check(double alpha, double gamma) {
  const ThresholdSet t = thresholds(2, alpha);
  if (!t.gamma_plus || !(gamma > *t.gamma_plus && gamma < 1.0))
    throw DomainError("gamma must lie on the reborn branch (gamma_+, 1)");
  const double lhs = rom_closed(ghzx_point(2, alpha, gamma)) - 1.0;
  const double c = concurrence(damped_ghz(alpha, {1.0 - gamma, 1.0 - gamma}));
  return {lhs, (1.0 - gamma) / gamma * c};
}

bool slice_witness_n2(const DensityOperator& rho) {
  if (rho.qubits() != 2) throw std::invalid_argument("slice witness acts on two qubits");
  const auto m = pauli_moments(rho);
  constexpr int kII = 0, kIZ = 3, kXX = 5, kYY = 10, kZI = 12, kZZ = 15;
  for (int k = 0; k < 16; ++k) {
    if (k == kII || k == kIZ || k == kXX || k == kYY || k == kZI || k == kZZ) continue;
    if (std::abs(m[k]) > 1e-10) throw DomainError("state is off the symmetric X slice");
  }
  if (std::abs(m[kZI] - m[kIZ]) > 1e-10 || std::abs(m[kXX] + m[kYY]) > 1e-10)
    throw DomainError("state is off the symmetric X slice");
  return 2.0 * std::abs(m[kZI]) + 2.0 * std::abs(m[kXX]) <= 1.0 + m[kZZ] + 1e-12;
}

ThresholdSet dephased_thresholds(int n, double alpha, double eta) {
  if (n < 2) throw DomainError("n must be >= 2");
  check_alpha(alpha);
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0,1]");
  ThresholdSet t;
  t.n = n;
  t.alpha = alpha;
  const double b = beta_of(alpha);
  t.r = alpha / b;
  std::tie(t.alpha1, t.alpha2) = alpha_boundaries(n);
  if (eta == 0.0) {
    t.gamma_e = 0.0;
    t.gamma_gme = 0.0;
    t.regime = Regime::Degenerate;
    return t;
  }
  const double tau = 2.0 / n;
  t.gamma_e = std::min(1.0, eta * std::pow(t.r, tau));
  t.gamma_gme = std::min(1.0, eta * std::pow(t.r / (std::pow(2.0, n - 1) - 1.0), tau));
  const double eta_half = std::pow(eta, 0.5 * n);
  if (t.r < 1.0) t.gamma_plus = 1.0 - eta * std::pow(t.r, tau);
  if (std::abs(t.r - eta_half) <= kBoundaryTol) {
    t.regime = Regime::Critical;
    return t;
  }
  if (t.r > eta_half) {
    t.regime = Regime::NoWindow;
    return t;
  }
  const double gp = *t.gamma_plus;
  t.gamma_minus = bisect(
      [&](double g) { return alpha * alpha + b * b * std::pow(g, n) - eta_half * alpha * b * std::pow(1.0 - g, 0.5 * n); },
      0.0, gp);
  t.regime = regime_from_order(*t.gamma_minus, gp, t.gamma_e);
  return t;
}

double dephased_gamma_minus_n2(double alpha, double eta) {
  check_alpha(alpha);
  const double b = beta_of(alpha);
  const double disc = alpha * (4.0 * eta * b - (4.0 - eta * eta) * alpha);
  if (disc < 0.0) throw DomainError("no physical root: outside the re-entrant regime");
  return (std::sqrt(disc) - eta * alpha) / (2.0 * b);
}

PhaseTwist phase_twist_analysis(int n, double alpha, double phi) {
  if (n < 2) throw DomainError("n must be >= 2");
  check_alpha(alpha);
  PhaseTwist p;
  const double b = beta_of(alpha);
  p.r = alpha / b;
  p.F = std::abs(std::cos(n * phi)) + std::abs(std::sin(n * phi));
  const double tau = 2.0 / n;
  p.gamma_e = std::min(1.0, std::pow(p.r, tau));
  p.delta = std::pow(p.r, tau) * (std::pow(p.F, tau) - 1.0);
  const double rf = p.r * p.F;
  if (rf >= 1.0) return p;
  const double gp = 1.0 - std::pow(rf, tau);
  p.gamma_plus = gp;
  p.genuine = std::pow(gp, n) > p.r * p.r * (p.F * p.F - 1.0);
  if (p.genuine)
    p.gamma_minus = bisect(
        [&](double g) { return alpha * alpha + b * b * std::pow(g, n) - p.F * alpha * b * std::pow(1.0 - g, 0.5 * n); },
        0.0, gp);
  return p;
}

double phase_twist_gamma_minus_n2(double alpha, double phi) {
  check_alpha(alpha);
  const double b = beta_of(alpha);
  const double F = std::abs(std::cos(2.0 * phi)) + std::abs(std::sin(2.0 * phi));
  const double disc = alpha * (4.0 * F * b - (4.0 - F * F) * alpha);
  if (disc < 0.0) throw DomainError("no physical root for this twist");
  return (std::sqrt(disc) - F * alpha) / (2.0 * b);
}

PhaseCovariantThresholds phase_covariant_thresholds(const PhaseCovariantProfile& profile, int n, double r) {
  if (!profile.is_real()) throw DomainError("phase-covariant thresholds need a real profile");
  if (n < 2) throw DomainError("n must be >= 2");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0,1)");
  const double rt = std::pow(r, 2.0 / n);
  auto ge = [&](double g) { return rt * profile.profile(g) - g; };
  auto gp = [&](double g) { return rt * profile.profile(g) - (1.0 - g); };

  constexpr int kGrid = 2000;
  const double hi = 1.0 - 1e-9;
  auto unique_root = [&](auto&& f, const char* name) {
    int changes = 0;
    double lo_b = 0.0, hi_b = 0.0;
    double prev = f(0.0);
    for (int k = 1; k <= kGrid; ++k) {
      const double g = hi * k / kGrid;
      const double cur = f(g);
      if ((prev < 0.0) != (cur < 0.0)) {
        ++changes;
        lo_b = hi * (k - 1) / kGrid;
        hi_b = g;
      }
      prev = cur;
    }
    if (changes == 0) throw DomainError(std::string("no ") + name + " threshold on (0,1)");
    if (changes > 1) throw AmbiguityError(std::string("multiple ") + name + " thresholds; profile is ambiguous");
    return bisect(f, lo_b, hi_b);
  };
  PhaseCovariantThresholds out{};
  out.gamma_e = unique_root(ge, "entanglement");
  out.gamma_plus = unique_root(gp, "rebirth");
  out.reflection_holds = std::abs(profile.profile(out.gamma_e) - profile.profile(1.0 - out.gamma_e)) < 1e-10;
  return out;
}

NonuniformResult nonuniform_analysis(double alpha, const std::vector<double>& site_gammas) {
  check_alpha(alpha);
  const int n = static_cast<int>(site_gammas.size());
  if (n < 2 || n > 20) throw DomainError("need between 2 and 20 sites");
  for (double g : site_gammas)
    if (!(g >= 0.0 && g < 1.0)) throw DomainError("site gammas must lie in [0,1)");
  const double b = beta_of(alpha);
  const double r = alpha / b;
  const double pg = product(site_gammas, false);
  const double pq = product(site_gammas, true);
  NonuniformResult res;
  res.p0 = alpha * alpha + b * b * pg;
  res.p1 = b * b * pq;
  res.c = alpha * b * std::sqrt(pq);
  res.membership = ghzx_membership(res.p0, res.p1, res.c);
  res.on_rebirth_surface = std::abs(pq - r * r) <= kSurfaceTol;
  res.on_death_surface = std::abs(pg - r * r) <= kSurfaceTol;
  res.pt_determinant = b * b * pq * (b * b * pg - alpha * alpha);
  // Block of |1_A 0_B>, |0_A 1_B> after transposing A, for every cut.
  for (std::uint32_t mask = 1; mask + 1 < (1U << n); ++mask) {
    double a = b * b, bb = b * b;
    for (int i = 0; i < n; ++i) {
      const bool in_a = (mask >> i) & 1U;
      a *= in_a ? 1.0 - site_gammas[i] : site_gammas[i];
      bb *= in_a ? site_gammas[i] : 1.0 - site_gammas[i];
    }
    const double det = a * bb - res.c * res.c;
    res.pt_determinant_spread = std::max(res.pt_determinant_spread, std::abs(det - res.pt_determinant));
  }
  res.geo_gamma_e = std::pow(pg, 1.0 / n);
  res.geo_gamma_plus = 1.0 - std::pow(pq, 1.0 / n);
  return res;
}

double separable_decomposition_at_death(int n, double alpha, const std::optional<std::vector<double>>& site_gammas) {
  check_alpha(alpha);
  if (n < 2 || n > kMaxQubits) throw DomainError("n must lie in [2,8]");
  const double b = beta_of(alpha);
  const double r = alpha / b;
  if (r >= 1.0) throw DomainError("death surface requires alpha < beta");
  std::vector<double> g = site_gammas ? *site_gammas : std::vector<double>(n, std::pow(r, 2.0 / n));
  if (static_cast<int>(g.size()) != n) throw std::invalid_argument("need one gamma per site");
  for (double v : g)
    if (!(v > 0.0 && v < 1.0)) throw DomainError("site gammas must lie in (0,1)");
  if (std::abs(product(g, false) - r * r) > kSurfaceTol) throw DomainError("parameters are off the death surface");

  const Index d = Index{1} << n;
  Matrix tau = Matrix::Zero(d, d);
  for (Index x = 0; x < d; ++x) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= bit_of(static_cast<std::uint64_t>(x), i, n) ? 1.0 - g[i] : g[i];
    tau(x, x) = p;
  }
  double coh = 1.0;
  for (double v : g) coh *= v * (1.0 - v);
  tau(0, d - 1) = tau(d - 1, 0) = std::sqrt(coh);
  Matrix expected = b * b * tau;
  expected(0, 0) += alpha * alpha;
  const DensityOperator rho = damped_ghz(alpha, g);
  return (rho.matrix() - expected).cwiseAbs().maxCoeff();
}

FacetMinorMirror facet_minor_mirror(double alpha, const std::vector<double>& site_gammas) {
  check_alpha(alpha);
  const int n = static_cast<int>(site_gammas.size());
  if (n < 2 || n > kMaxQubits) throw DomainError("need between 2 and 8 sites");
  for (double g : site_gammas)
    if (!(g > 0.0 && g < 1.0)) throw DomainError("site gammas must lie in (0,1)");
  const DensityOperator in = DensityOperator::pure(ghz_vector(n, alpha));
  const DensityOperator sys = apply_local_damping(in, site_gammas);
  const DensityOperator env = complementary_ad_output(in, site_gammas);
  const Index d = Index{1} << n;
  const double cs = std::abs(sys(0, d - 1));
  const double p1 = sys(d - 1, d - 1).real();
  // Cut A = {qubit 0}: transposing A pairs |1 0..0> with |0 1..1>.
  const Matrix pt = partial_transpose(env, {0});
  const Index ia = static_cast<Index>(site_mask(0, n));
  const Index ib = d - 1 - ia;
  const double ce = std::abs(pt(ia, ib));
  const double a = pt(ia, ia).real(), bb = pt(ib, ib).real();
  const double beta = beta_of(alpha);
  const double r = alpha / beta;
  return {cs * cs / (p1 * p1), ce * ce / (a * bb), r * r / product(site_gammas, true)};
}

}  // namespace magdyn
