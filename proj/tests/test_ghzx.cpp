#include <cmath>
#include <random>

#include "doctest.h"
#include "magdyn/ghzx.hpp"
#include "magdyn/stabset.hpp"
#include "test_util.hpp"

using namespace magdyn;
using magdyn::test::max_abs_diff;

namespace {

// Endpoint membership read off a full density matrix.
bool matrix_membership(const DensityOperator& rho) {
  const Index d = rho.dim();
  return ghzx_membership(rho(0, 0).real(), rho(d - 1, d - 1).real(), rho(0, d - 1));
}

DensityOperator evolve(int n, double alpha, const KrausChannel& ch) {
  return apply_local_channel(DensityOperator::pure(ghz_vector(n, alpha)), ch);
}

}  // namespace

TEST_SUITE("ghzx") {
  TEST_CASE("GHZ-X coordinates") {
    const auto v = ghzx_point(3, 0.3, 1.0);
    CHECK(v.p0() == doctest::Approx(1.0));
    for (int k = 1; k <= 3; ++k) CHECK(v.populations[k] == 0.0);
    CHECK(std::abs(v.coherence) == 0.0);

    const auto pure = ghzx_point(3, 0.3, 0.0);
    CHECK(pure.p0() == doctest::Approx(0.09));
    CHECK(pure.pn() == doctest::Approx(0.91));
    CHECK(pure.coherence.real() == doctest::Approx(0.3 * std::sqrt(0.91)));

    const auto pt = ghzx_point(2, 0.4, 0.5);
    CHECK(pt.populations[0] == doctest::Approx(0.37).epsilon(1e-14));
    CHECK(pt.populations[1] == doctest::Approx(0.42).epsilon(1e-14));
    CHECK(pt.populations[2] == doctest::Approx(0.21).epsilon(1e-14));
    CHECK(pt.coherence.real() == doctest::Approx(0.4 * std::sqrt(0.84) * 0.5).epsilon(1e-14));

    CHECK_THROWS_AS(ghzx_point(1, 0.3, 0.2), DomainError);
    CHECK_THROWS_AS(ghzx_point(2, 1.2, 0.2), DomainError);
    CHECK_THROWS_AS(ghzx_point(2, 0.3, 1.2), DomainError);
  }

  TEST_CASE("coordinates agree with full-matrix evolution") {
    for (int n = 2; n <= 6; ++n)
      for (double a : {0.15, 0.4, 0.8})
        for (double g : {0.0, 0.2, 0.55, 0.9}) {
          const auto rho = apply_local_damping(DensityOperator::pure(ghz_vector(n, a)), g);
          const auto pt = ghzx_point(n, a, g);
          std::vector<double> layers(n + 1, 0.0);
          for (Index x = 0; x < rho.dim(); ++x) layers[weight(static_cast<std::uint64_t>(x))] += rho(x, x).real();
          for (int k = 0; k <= n; ++k) CHECK(std::abs(layers[k] - pt.populations[k]) < 1e-13);
          CHECK(std::abs(rho(0, rho.dim() - 1) - pt.coherence) < 1e-13);
          CHECK(max_abs_diff(to_density(pt).matrix(), rho.matrix()) < 1e-13);
        }
  }

  TEST_CASE("point invariants") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
      const int n = 2 + trial % 30;
      const auto pt = ghzx_point(n, 0.01 + 0.98 * u(rng), u(rng));
      double total = 0.0;
      for (double p : pt.populations) {
        CHECK(p >= 0.0);
        total += p;
      }
      CHECK(std::abs(total - 1.0) < 1e-12);
      CHECK(pt.coherence.real() >= 0.0);
      CHECK(std::norm(pt.coherence) <= pt.p0() * pt.pn() + 1e-12);
    }
  }

  TEST_CASE("closed-form membership") {
    CHECK(membership_closed(ghzx_point(4, 0.7, 1.0)));
    CHECK(membership_closed(ghzx_point(2, 0.4, 0.45)));
    CHECK_FALSE(membership_closed(ghzx_point(2, 0.4, 0.60)));
    for (double g : {0.0, 0.1, 0.5, 0.9, 0.999}) CHECK_FALSE(membership_closed(ghzx_point(2, 0.8, g)));
    CHECK(ghzx_membership(0.5, 0.5, cplx(0.3, 0.2)));
    CHECK_FALSE(ghzx_membership(0.5, 0.5, cplx(0.3, 0.3)));
  }

  TEST_CASE("closed-form robustness") {
    CHECK(rom_closed(ghzx_point(2, 0.4, 0.45)) == doctest::Approx(1.0));
    CHECK(rom_closed(ghzx_point(2, 1.0 / std::sqrt(2.0), 0.5)) == doctest::Approx(1.25).epsilon(1e-14));
    for (double g = 0.0; g < 1.0; g += 0.05)
      CHECK(rom_closed(ghzx_point(2, 1.0 / std::sqrt(2.0), g)) == doctest::Approx(1.0 + g * (1.0 - g)).epsilon(1e-13));
    CHECK_THROWS_AS(rom(0.2, 0.2, 0.3), DomainError);
  }

  TEST_CASE("thresholds at the worked point") {
    const auto t = thresholds(2, 0.4);
    REQUIRE(t.reentrant());
    CHECK(*t.gamma_minus == doctest::Approx(0.3236).epsilon(5e-4 / 0.3236));
    CHECK(*t.gamma_plus == doctest::Approx(0.5636).epsilon(5e-4 / 0.5636));
    CHECK(t.gamma_e == doctest::Approx(0.4364).epsilon(5e-4 / 0.4364));
    CHECK(t.regime == Regime::II);
    CHECK(t.alpha1 == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-14));
    CHECK(t.alpha2 == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(-std::log1p(-*t.gamma_minus) == doctest::Approx(0.391).epsilon(1e-3));
    CHECK(-std::log1p(-*t.gamma_plus) == doctest::Approx(0.829).epsilon(1e-3));
  }

  TEST_CASE("thresholds bracket membership flips") {
    for (int n = 2; n <= 6; ++n)
      for (double a : {0.1, 0.25, 0.4, 0.6}) {
        const auto t = thresholds(n, a);
        if (!t.reentrant()) continue;
        const double gm = *t.gamma_minus, gp = *t.gamma_plus;
        CHECK(0.0 < gm);
        CHECK(gm < gp);
        CHECK(gp < 1.0);
        CHECK_FALSE(membership_closed(ghzx_point(n, a, gm - 1e-7)));
        CHECK(membership_closed(ghzx_point(n, a, gm + 1e-7)));
        CHECK(membership_closed(ghzx_point(n, a, gp - 1e-7)));
        CHECK_FALSE(membership_closed(ghzx_point(n, a, gp + 1e-7)));
        // Entanglement threshold located on the evolved state's partial transpose.
        const auto state = [&](double g) { return apply_local_damping(DensityOperator::pure(ghz_vector(n, a)), g); };
        CHECK(negativity(state(t.gamma_e - 1e-6), {0}) > 0.0);
        CHECK(negativity(state(t.gamma_e + 1e-6), {0}) < 1e-14);
        CHECK(std::abs(t.gamma_e + gp - 1.0) < 1e-12);
        CHECK(t.gamma_gme <= t.gamma_e);
        if (n == 2) CHECK(t.gamma_gme == t.gamma_e);
        if (n > 2) CHECK(t.gamma_gme < t.gamma_e);
      }
  }

  TEST_CASE("regime labels") {
    CHECK(thresholds(3, 0.9).regime == Regime::NoWindow);
    CHECK(thresholds(2, 1.0 / std::sqrt(2.0)).regime == Regime::Critical);
    CHECK(thresholds(2, 0.2).regime == Regime::I);
    CHECK(thresholds(2, 0.55).regime == Regime::III);
    CHECK(thresholds(2, 1.0 / std::sqrt(10.0)).regime == Regime::BoundaryI_II);
    CHECK(thresholds(2, 1.0 / std::sqrt(5.0)).regime == Regime::BoundaryII_III);
    // Regime I loses entanglement before the death, III only after the rebirth.
    const auto r1 = thresholds(3, 0.1);
    CHECK(r1.gamma_e < *r1.gamma_minus);
    const auto r2 = thresholds(3, 0.3);
    CHECK(*r2.gamma_minus < r2.gamma_e);
    CHECK(r2.gamma_e < *r2.gamma_plus);
    const auto r3 = thresholds(3, 0.5);
    CHECK(*r3.gamma_plus < r3.gamma_e);
    CHECK(to_string(Regime::BoundaryII_III) == "II/III-boundary");
  }

  TEST_CASE("window width bound") {
    const auto w2 = window_width_and_bound(2, 0.4);
    CHECK(w2.width == doctest::Approx(0.24).epsilon(0.0005 / 0.24));
    for (int n = 2; n <= 12; ++n)
      for (double a : {0.2, 0.3, 0.4}) {
        const auto w = window_width_and_bound(n, a);
        CHECK(w.width <= w.bound * (1.0 + 1e-12));
        if (n >= 7 || (n == 6 && a > 0.25)) CHECK(w.bound / w.width <= 1.15);
      }
    // The one sampled point where the bound is not yet within 15%.
    const auto w6 = window_width_and_bound(6, 0.2);
    CHECK(w6.bound / w6.width == doctest::Approx(1.3289).epsilon(1e-4));
    CHECK_THROWS_AS(window_width_and_bound(3, 0.9), DomainError);
  }

  TEST_CASE("resource mirror") {
    for (auto [a, g] : {std::pair{0.40, 0.8}, {0.55, 0.9}, {0.3, 0.95}}) {
      const auto m = resource_mirror_check(a, g);
      CHECK(std::abs(m.lhs - m.rhs) < 1e-10);
    }
    const auto near_one = resource_mirror_check(0.4, 1.0 - 1e-9);
    CHECK(near_one.lhs < 1e-8);
    CHECK(near_one.rhs < 1e-8);
    CHECK_THROWS_AS(resource_mirror_check(0.4, 0.5), DomainError);
  }

  TEST_CASE("two-qubit slice witness agrees with the LP") {
    const auto in = DensityOperator::pure(ghz_vector(2, 0.4));
    CHECK(slice_witness_n2(apply_local_damping(in, 0.45)));
    CHECK_FALSE(slice_witness_n2(apply_local_damping(in, 0.2)));
    const StabilizerDictionary d2(2);
    for (int k = 0; k < 50; ++k) {
      const double g = k / 49.0;
      const auto rho = apply_local_damping(in, g);
      CHECK(slice_witness_n2(rho) == membership_lp(rho, d2).inside);
    }
    Vector psi = Vector::Zero(4);
    psi(1) = 1.0;
    CHECK_THROWS_AS(slice_witness_n2(DensityOperator::pure(psi)), DomainError);
  }

  TEST_CASE("dephased thresholds") {
    for (int n = 2; n <= 5; ++n)
      for (double a : {0.1, 0.3, 0.5}) {
        const auto pure = thresholds(n, a);
        const auto one = dephased_thresholds(n, a, 1.0);
        CHECK(one.gamma_e == pure.gamma_e);
        CHECK(one.gamma_plus == pure.gamma_plus);
        CHECK(one.regime == pure.regime);
        if (pure.gamma_minus) CHECK(std::abs(*one.gamma_minus - *pure.gamma_minus) < 1e-15);
      }
    for (int n = 2; n <= 5; ++n)
      for (double a : {0.02, 0.05, 0.1}) {
        const auto t = dephased_thresholds(n, a, 0.6);
        if (t.r >= std::pow(0.6, 0.5 * n)) continue;
        REQUIRE(t.reentrant());
        CHECK(std::abs(t.gamma_e + *t.gamma_plus - 1.0) < 1e-12);
        // Bracket on the matrix evolved with the composed channel.
        const auto prof = PhaseCovariantProfile::dephased(0.6);
        CHECK_FALSE(matrix_membership(evolve(n, a, prof.channel(*t.gamma_minus - 1e-7))));
        CHECK(matrix_membership(evolve(n, a, prof.channel(*t.gamma_minus + 1e-7))));
        CHECK(matrix_membership(evolve(n, a, prof.channel(*t.gamma_plus - 1e-7))));
        CHECK_FALSE(matrix_membership(evolve(n, a, prof.channel(*t.gamma_plus + 1e-7))));
      }
    const auto t2 = dephased_thresholds(2, 0.2, 0.6);
    REQUIRE(t2.gamma_minus);
    CHECK(std::abs(*t2.gamma_minus - dephased_gamma_minus_n2(0.2, 0.6)) < 1e-10);
    CHECK(dephased_thresholds(2, 0.3, 0.0).regime == Regime::Degenerate);
    CHECK(dephased_thresholds(2, 0.6, 0.6).regime == Regime::NoWindow);
    CHECK(dephased_thresholds(2, 0.6, 0.6).gamma_plus.has_value());
  }

  TEST_CASE("phase twist") {
    const double phi = M_PI / 8;
    const auto p = phase_twist_analysis(2, 0.35, phi);
    REQUIRE(p.gamma_minus);
    REQUIRE(p.gamma_plus);
    CHECK(std::abs(*p.gamma_minus - 0.413) < 1e-3);
    CHECK(std::abs(*p.gamma_plus - 0.472) < 1e-3);
    CHECK(std::abs(p.delta - 0.155) < 1e-3);
    CHECK(p.genuine);
    CHECK(std::abs(*p.gamma_minus - phase_twist_gamma_minus_n2(0.35, phi)) < 1e-12);
    for (int n = 2; n <= 5; ++n)
      for (int k = 0; k < 4; ++k) CHECK(std::abs(phase_twist_analysis(n, 0.3, k * M_PI / (2 * n)).delta) < 1e-12);

    // Diamond criterion against the LP on complex-coherence states.
    const StabilizerDictionary d2(2);
    const auto prof = PhaseCovariantProfile::phase_twist(phi);
    for (int k = 0; k <= 40; ++k) {
      const double g = k / 40.0;
      const auto rho = evolve(2, 0.35, prof.channel(g));
      CHECK(matrix_membership(rho) == membership_lp(rho, d2).inside);
    }
  }

  TEST_CASE("phase-covariant reflection") {
    const double r = 0.4;
    const auto ad = phase_covariant_thresholds(PhaseCovariantProfile::pure_ad(), 2, r);
    CHECK(ad.gamma_e == doctest::Approx(r).epsilon(1e-12));
    CHECK(ad.reflection_holds);
    CHECK(std::abs(ad.gamma_e + ad.gamma_plus - 1.0) < 1e-12);

    const auto deph = phase_covariant_thresholds(PhaseCovariantProfile::dephased(0.7), 3, r);
    const double a = r / std::sqrt(1.0 + r * r);
    const auto ref = dephased_thresholds(3, a, 0.7);
    CHECK(deph.reflection_holds);
    CHECK(std::abs(deph.gamma_e - ref.gamma_e) < 1e-10);
    CHECK(std::abs(deph.gamma_plus - *ref.gamma_plus) < 1e-10);

    const auto pl = phase_covariant_thresholds(PhaseCovariantProfile::power_law(0.7), 2, r);
    CHECK_FALSE(pl.reflection_holds);
    CHECK(std::abs(pl.gamma_e + pl.gamma_plus - 1.0) > 1e-3);
    CHECK_THROWS_AS(phase_covariant_thresholds(PhaseCovariantProfile::phase_twist(0.3), 2, r), DomainError);
  }

  TEST_CASE("nonuniform damping") {
    const double a = 0.3;
    const auto t = thresholds(3, a);
    const auto hom = nonuniform_analysis(a, {0.5, 0.5, 0.5});
    const auto pt = ghzx_point(3, a, 0.5);
    CHECK(hom.p0 == doctest::Approx(pt.p0()));
    CHECK(hom.p1 == doctest::Approx(pt.pn()));
    CHECK(hom.membership == membership_closed(pt));
    CHECK(hom.geo_gamma_e == doctest::Approx(0.5));
    CHECK(nonuniform_analysis(a, {t.gamma_e, t.gamma_e, t.gamma_e}).on_death_surface);

    const double alpha = 0.2, b = std::sqrt(1 - alpha * alpha), r = alpha / b;
    const double g3 = r * r / (0.3 * 0.5);
    const auto death = nonuniform_analysis(alpha, {0.3, 0.5, g3});
    CHECK(death.on_death_surface);
    CHECK(death.pt_determinant_spread < 1e-12);
    const auto rho = apply_local_damping(DensityOperator::pure(ghz_vector(3, alpha)), {0.3, 0.5, g3});
    for (int q = 0; q < 3; ++q) CHECK(negativity(rho, {q}) < 1e-10);

    // The involution γ -> 1-γ swaps the death and rebirth surfaces.
    const auto mirrored = nonuniform_analysis(alpha, {0.7, 0.5, 1.0 - g3});
    CHECK(mirrored.on_rebirth_surface);
    CHECK_FALSE(mirrored.on_death_surface);
  }

  TEST_CASE("separable decomposition at the death surface") {
    CHECK(separable_decomposition_at_death(2, 0.4) < 1e-12);
    CHECK(separable_decomposition_at_death(4, 0.1) < 1e-12);
    const double alpha = 0.25, r = alpha / std::sqrt(1 - alpha * alpha);
    CHECK(separable_decomposition_at_death(3, alpha, std::vector<double>{0.4, 0.6, r * r / 0.24}) < 1e-12);
    CHECK_THROWS_AS(separable_decomposition_at_death(3, alpha, std::vector<double>{0.4, 0.6, 0.5}), DomainError);
    // P_0 = 2α² on the homogeneous death surface.
    const auto pt = ghzx_point(3, alpha, std::pow(r, 2.0 / 3.0));
    CHECK(pt.p0() == doctest::Approx(2 * alpha * alpha).epsilon(1e-13));
  }

  TEST_CASE("facet-minor mirror") {
    const auto hom = facet_minor_mirror(0.3, {0.4, 0.4, 0.4});
    CHECK(std::abs(hom.lhs - hom.rhs) < 1e-12);
    CHECK(std::abs(hom.lhs - hom.closed) < 1e-12);
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> gs(2 + trial % 4);
      for (auto& g : gs) g = u(rng);
      const auto m = facet_minor_mirror(0.35, gs);
      CHECK(std::abs(m.lhs - m.rhs) < 1e-10 * std::max(1.0, m.lhs));
    }
    const double a = 0.3, r = a / std::sqrt(1 - a * a);
    const double q3 = r * r / (0.6 * 0.7);
    const auto facet = facet_minor_mirror(a, {0.4, 0.3, 1.0 - q3});
    CHECK(facet.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(facet.rhs == doctest::Approx(1.0).epsilon(1e-12));
  }
}
