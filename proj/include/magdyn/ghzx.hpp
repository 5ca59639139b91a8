// Closed forms on the GHZ-X manifold: damped-GHZ coordinates, membership and
// robustness, death/rebirth thresholds, and the channel variants.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magdyn/qcore.hpp"

namespace magdyn {

struct GhzXPoint {
  int n = 0;
  std::vector<double> populations;  // P_0..P_n, summed over each Hamming-weight layer
  cplx coherence = 0.0;             // <0^n|ρ|1^n>
  double alpha = 0.0, beta = 0.0, gamma = 0.0;

  double p0() const { return populations.front(); }
  double pn() const { return populations.back(); }
};

GhzXPoint ghzx_point(int n, double alpha, double gamma);
// Full 2^n x 2^n matrix (layer populations spread uniformly).
DensityOperator to_density(const GhzXPoint& pt);

bool membership_closed(const GhzXPoint& pt);
// Endpoint test for a general GHZ-X point; complex c uses the diamond |Re c|+|Im c|.
bool ghzx_membership(double p0, double p1, cplx c);
double rom_closed(const GhzXPoint& pt);
double rom(double p0, double p1, double c);

enum class Regime { I, II, III, BoundaryI_II, BoundaryII_III, Critical, NoWindow, Degenerate };
std::string to_string(Regime r);

struct ThresholdSet {
  int n = 0;
  double alpha = 0.0;
  double r = 0.0;
  std::optional<double> gamma_minus;
  std::optional<double> gamma_plus;
  double gamma_e = 1.0;
  double gamma_gme = 1.0;
  Regime regime = Regime::NoWindow;
  double alpha1 = 0.0, alpha2 = 0.0;

  bool reentrant() const { return gamma_minus.has_value() && gamma_plus.has_value(); }
};

// f_n(γ) = α² + β²γ^n - αβ(1-γ)^{n/2}; γ_- is its root.
double f_n(int n, double alpha, double gamma);
std::pair<double, double> alpha_boundaries(int n);
ThresholdSet thresholds(int n, double alpha);

struct WindowBound {
  double width;
  double bound;
};
WindowBound window_width_and_bound(int n, double alpha);

struct MirrorPair {
  double lhs;
  double rhs;
};
// n = 2: R(γ)-1 against ((1-γ)/γ) C(ρ at 1-γ) on the reborn branch.
MirrorPair resource_mirror_check(double alpha, double gamma);

// 2|<ZI>| + 2|<XX>| <= 1 + <ZZ> for two-qubit states on the symmetric X slice.
bool slice_witness_n2(const DensityOperator& rho);

// AD followed by dephasing with η = (1-2p)².
ThresholdSet dephased_thresholds(int n, double alpha, double eta);
double dephased_gamma_minus_n2(double alpha, double eta);

struct PhaseTwist {
  double F = 1.0;
  double r = 0.0;
  double gamma_e = 0.0;
  std::optional<double> gamma_plus;
  std::optional<double> gamma_minus;
  double delta = 0.0;
  bool genuine = false;
};
PhaseTwist phase_twist_analysis(int n, double alpha, double phi);
double phase_twist_gamma_minus_n2(double alpha, double phi);

struct AmbiguityError : DomainError {
  using DomainError::DomainError;
};

struct PhaseCovariantThresholds {
  double gamma_e;
  double gamma_plus;
  bool reflection_holds;
};
PhaseCovariantThresholds phase_covariant_thresholds(const PhaseCovariantProfile& profile, int n, double r);

struct NonuniformResult {
  double p0 = 0.0, p1 = 0.0, c = 0.0;
  bool membership = false;
  bool on_rebirth_surface = false;
  bool on_death_surface = false;
  double pt_determinant = 0.0;
  double pt_determinant_spread = 0.0;  // max deviation over all bipartitions
  double geo_gamma_e = 0.0;
  double geo_gamma_plus = 0.0;
};
NonuniformResult nonuniform_analysis(double alpha, const std::vector<double>& site_gammas);

double separable_decomposition_at_death(int n, double alpha, const std::optional<std::vector<double>>& site_gammas = {});

struct FacetMinorMirror {
  double lhs;
  double rhs;
  double closed;  // r² / prod(1-γ_i)
};
FacetMinorMirror facet_minor_mirror(double alpha, const std::vector<double>& site_gammas);

}  // namespace magdyn
