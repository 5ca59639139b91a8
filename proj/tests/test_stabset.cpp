#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "magdyn/ghzx.hpp"
#include "magdyn/stabset.hpp"
#include "test_util.hpp"

using namespace magdyn;
using magdyn::test::max_abs_diff;

namespace {

// Phase-fixed, rounded amplitudes used as a set key.
std::vector<long long> canonical_key(Vector v) {
  Index first = 0;
  while (std::abs(v(first)) < 1e-9) ++first;
  v *= std::conj(v(first)) / std::abs(v(first));
  std::vector<long long> key;
  for (Index i = 0; i < v.size(); ++i) {
    key.push_back(std::llround(v(i).real() * 1e6));
    key.push_back(std::llround(v(i).imag() * 1e6));
  }
  return key;
}

// Clifford orbit of |0^n> under H, S and CNOT, generated by breadth-first search.
std::set<std::vector<long long>> clifford_orbit(int n) {
  const Index d = Index{1} << n;
  const double s = 1.0 / std::sqrt(2.0);
  auto apply_h = [&](const Vector& v, int q) {
    Vector out = Vector::Zero(d);
    const Index m = static_cast<Index>(site_mask(q, n));
    for (Index x = 0; x < d; ++x) {
      if (x & m) continue;
      out(x) = s * (v(x) + v(x | m));
      out(x | m) = s * (v(x) - v(x | m));
    }
    return out;
  };
  auto apply_s = [&](const Vector& v, int q) {
    Vector out = v;
    for (Index x = 0; x < d; ++x)
      if (x & static_cast<Index>(site_mask(q, n))) out(x) *= cplx(0, 1);
    return out;
  };
  auto apply_cx = [&](const Vector& v, int c, int t) {
    Vector out(d);
    for (Index x = 0; x < d; ++x)
      out(x) = (x & static_cast<Index>(site_mask(c, n))) ? v(x ^ static_cast<Index>(site_mask(t, n))) : v(x);
    return out;
  };
  Vector start = Vector::Zero(d);
  start(0) = 1.0;
  std::set<std::vector<long long>> seen{canonical_key(start)};
  std::vector<Vector> frontier{start};
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& v : frontier) {
      std::vector<Vector> images;
      for (int q = 0; q < n; ++q) {
        images.push_back(apply_h(v, q));
        images.push_back(apply_s(v, q));
        for (int t = 0; t < n; ++t)
          if (t != q) images.push_back(apply_cx(v, q, t));
      }
      for (auto& w : images)
        if (seen.insert(canonical_key(w)).second) next.push_back(w);
    }
    frontier = std::move(next);
  }
  return seen;
}

DensityOperator bell_phi(double g) {
  return apply_local_damping(DensityOperator::pure(ghz_vector(2, 1.0 / std::sqrt(2.0))), g);
}

DensityOperator bell_psi(double g) {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return apply_local_damping(DensityOperator::pure(v), g);
}

Vector from_support(int n, const std::map<std::uint32_t, cplx>& amps) {
  Vector v = Vector::Zero(Index{1} << n);
  for (const auto& [x, a] : amps) v(x) = a;
  return v / v.norm();
}

}  // namespace

TEST_SUITE("stabset") {
  TEST_CASE("enumeration counts") {
    CHECK(enumerate_stabilizer_states(1).size() == 6);
    CHECK(enumerate_stabilizer_states(2).size() == 60);
    CHECK(enumerate_stabilizer_states(3).size() == 1080);
    CHECK(stabilizer_count(4) == 36720);
    CHECK_THROWS_AS(enumerate_stabilizer_states(5), CapabilityError);
  }

  TEST_CASE("enumerated states coincide with the Clifford orbit of the vacuum") {
    for (int n = 1; n <= 3; ++n) {
      const auto orbit = clifford_orbit(n);
      std::set<std::vector<long long>> mine;
      for (const auto& s : enumerate_stabilizer_states(n)) mine.insert(canonical_key(materialize(s)));
      CHECK(orbit.size() == stabilizer_count(n));
      CHECK(mine == orbit);
    }
  }

  TEST_CASE("materialized states are normalized, flat and affinely supported") {
    for (int n = 1; n <= 3; ++n)
      for (const auto& s : enumerate_stabilizer_states(n)) {
        const Vector v = materialize(s);
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
        int nonzero = 0;
        for (Index i = 0; i < v.size(); ++i)
          if (std::abs(v(i)) > 1e-12) {
            ++nonzero;
            CHECK(std::abs(std::abs(v(i)) - std::pow(2.0, -0.5 * s.m)) < 1e-12);
          }
        CHECK(nonzero == (1 << s.m));
        const auto supp = s.support();
        std::set<std::uint32_t> as_set(supp.begin(), supp.end());
        CHECK(static_cast<int>(as_set.size()) == (1 << s.m));
        for (auto x : supp)
          for (auto y : supp)
            for (auto z : supp) CHECK(as_set.count(x ^ y ^ z) == 1);
      }
  }

  TEST_CASE("materialize conventions") {
    StabilizerState vac;
    vac.n = 3;
    const Vector v = materialize(vac);
    CHECK(std::abs(v(0) - 1.0) < 1e-15);

    StabilizerState yplus;
    yplus.n = 1;
    yplus.m = 1;
    yplus.basis = {1};
    yplus.linear_phase = {1};
    const Vector y = materialize(yplus);
    CHECK(std::abs(y(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(y(1) - cplx(0, 1.0 / std::sqrt(2.0))) < 1e-15);

    StabilizerState phi;
    phi.n = 2;
    phi.m = 1;
    phi.basis = {3};
    phi.linear_phase = {0};
    CHECK(max_abs_diff(materialize(phi), ghz_vector(2, 1.0 / std::sqrt(2.0))) < 1e-15);
    CHECK(phi.record() == "n=2 m=1 basis=11 offset=00 linear=0 quadratic=-");
  }

  TEST_CASE("Pauli coordinates are integer and reproduce the projector") {
    const StabilizerDictionary dict(2);
    for (std::size_t j = 0; j < dict.size(); ++j) {
      const auto& coords = dict.coordinates(j);
      CHECK(coords.size() == 4);  // a pure stabilizer state has 2^n nonzero Pauli expectations
      const auto rho = DensityOperator::pure(materialize(dict.states()[j]));
      const auto moments = pauli_moments(rho);
      for (const auto& [p, sign] : coords) CHECK(std::abs(moments[p] - sign) < 1e-12);
    }
  }

  TEST_CASE("membership LP") {
    const StabilizerDictionary d2(2);
    const auto vac = membership_lp(DensityOperator::basis_state(2, 0), d2);
    CHECK(vac.inside);
    REQUIRE(vac.weights.size() == 1);
    CHECK(vac.weights[0].second == doctest::Approx(1.0));

    const auto in = DensityOperator::pure(ghz_vector(2, 0.4));
    CHECK(membership_lp(apply_local_damping(in, 0.45), d2).inside);
    CHECK_FALSE(membership_lp(apply_local_damping(in, 0.6), d2).inside);

    // A convex decomposition that reconstructs the state.
    const auto rho = apply_local_damping(in, 0.45);
    const auto res = membership_lp(rho, d2);
    Matrix rec = Matrix::Zero(4, 4);
    double total = 0.0;
    for (const auto& [j, w] : res.weights) {
      const Vector v = materialize(d2.states()[j]);
      rec += w * v * v.adjoint();
      total += w;
      CHECK(w >= -1e-12);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_abs_diff(rec, rho.matrix()) < 1e-7);
  }

  TEST_CASE("robustness LP") {
    const StabilizerDictionary d2(2);
    for (std::size_t j = 0; j < d2.size(); j += 7) {
      const auto cert = robustness_lp(DensityOperator::pure(materialize(d2.states()[j])), d2);
      CHECK(std::abs(cert.value - 1.0) < 1e-7);
    }
    const auto cert = robustness_lp(bell_phi(0.5), d2);
    CHECK(std::abs(cert.value - 1.25) < 1e-6);
    CHECK(cert.residual < 1e-7);
    CHECK(std::abs(cert.duality_gap) < 1e-7);
    double l1 = 0.0;
    for (const auto& [j, q] : cert.coefficients) l1 += std::abs(q);
    CHECK(std::abs(l1 - cert.value) < 1e-7);

    const StabilizerDictionary d3(3);
    const auto pt = ghzx_point(3, 0.3, 0.1);
    CHECK(std::abs(robustness_lp(to_density(pt), d3).value - rom_closed(pt)) < 1e-6);

    CHECK_THROWS_AS(robustness_lp(DensityOperator::basis_state(3, 0), d2), std::invalid_argument);
  }

  TEST_CASE("random GHZ-X points: LP robustness equals the closed form") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const StabilizerDictionary d2(2), d3(3);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + trial % 2;
      const auto pt = ghzx_point(n, 0.02 + 0.96 * u(rng), u(rng));
      const auto rho = to_density(pt);
      const auto& dict = n == 2 ? d2 : d3;
      const auto cert = robustness_lp(rho, dict);
      CHECK(cert.value >= 1.0 - 1e-9);
      CHECK(std::abs(cert.value - rom_closed(pt)) < 1e-6);
    }
  }

  TEST_CASE("pair obstruction") {
    Matrix diag = Matrix::Zero(4, 4);
    diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
    CHECK_FALSE(pair_obstruction(DensityOperator(2, diag)).has_value());

    Vector h(2);
    h << std::cos(M_PI / 8), std::sin(M_PI / 8);
    const auto hit = pair_obstruction(DensityOperator::pure(h));
    REQUIRE(hit.has_value());
    CHECK(hit->first == 0);
    CHECK(hit->second == 1);

    // An obstruction always implies LP infeasibility.
    std::mt19937_64 rng(23);
    const StabilizerDictionary d2(2);
    int obstructed = 0;
    for (int trial = 0; trial < 40; ++trial) {
      const auto rho = magdyn::test::random_density(2, rng);
      const auto mixed = apply_local_damping(rho, 0.3);
      if (pair_obstruction(mixed)) {
        ++obstructed;
        CHECK_FALSE(membership_lp(mixed, d2).inside);
      }
    }
    (void)obstructed;
  }

  TEST_CASE("GHZ-X witness") {
    CHECK(ghzx_witness_value(DensityOperator::basis_state(3, 0), 1, 0) == doctest::Approx(-1.0));
    const auto pt = ghzx_point(2, 0.4, 0.7);
    const double w = ghzx_witness_value(to_density(pt), 1, 1);
    CHECK(w == doctest::Approx(1.0 + 2.0 * (pt.coherence.real() - pt.pn())).epsilon(1e-12));
    CHECK(w == doctest::Approx(rom_closed(pt)).epsilon(1e-12));

    for (int n = 2; n <= 3; ++n) {
      const StabilizerDictionary dict(n);
      for (int s : {-1, 1})
        for (int j : {0, 1}) {
          const Matrix W = ghzx_witness(n, s, j);
          CHECK(validate_witness_feasibility(W, dict));
          CHECK(std::abs(witness_max_abs(W, dict) - 1.0) < 1e-12);
        }
    }
  }

  TEST_CASE("row dominance") {
    for (double g : {0.0, 0.3, 0.7, 0.99}) {
      CHECK(row_dominance(bell_psi(g)).inside);
      Vector w = Vector::Zero(8);
      w(1) = w(2) = w(4) = 1.0 / std::sqrt(3.0);
      const auto res = row_dominance(apply_local_damping(DensityOperator::pure(w), g));
      CHECK_FALSE(res.inside);
      CHECK(res.failing_row.has_value());
    }
    Matrix diag = Matrix::Zero(4, 4);
    diag.diagonal() << 0.5, 0.25, 0.25, 0.0;
    CHECK(row_dominance(DensityOperator(2, diag)).inside);
    CHECK_THROWS_AS(row_dominance(bell_phi(0.2)), DomainError);
  }

  TEST_CASE("single-qubit octahedron") {
    CHECK(octahedron_membership({0, 0, 1}));
    CHECK(single_qubit_rom({0, 0, 1}) == doctest::Approx(1.0));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK_FALSE(octahedron_membership({s, 0, s}));
    CHECK(single_qubit_rom({s, 0, s}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(single_qubit_rom({0.6, 0, 0.6}) == doctest::Approx(1.2));
    CHECK_THROWS_AS(single_qubit_rom({1, 1, 0}), DomainError);

    // LP oracle on the single-qubit dictionary.
    const StabilizerDictionary d1(1);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
      Eigen::Vector3d b(u(rng), u(rng), u(rng));
      if (b.norm() > 1.0) b /= 1.01 * b.norm();
      Matrix m(2, 2);
      m << 0.5 * (1 + b.z()), cplx(0.5 * b.x(), -0.5 * b.y()), cplx(0.5 * b.x(), 0.5 * b.y()), 0.5 * (1 - b.z());
      const DensityOperator rho(1, m);
      CHECK(std::abs(robustness_lp(rho, d1).value - single_qubit_rom(b)) < 1e-7);
      CHECK(membership_lp(rho, d1).inside == octahedron_membership(b));
    }
  }

  TEST_CASE("four-qubit witness on the even sector") {
    CHECK(we_witness_value(DensityOperator::basis_state(4, 0)) == doctest::Approx(3.0));

    // Omega_2: average of the weight-2 Dicke states on each three-site subset.
    Matrix omega = Matrix::Zero(16, 16);
    for (int skip = 0; skip < 4; ++skip) {
      Vector d = Vector::Zero(16);
      for (std::uint32_t x = 0; x < 16; ++x)
        if (__builtin_popcount(x) == 2 && !(x & site_mask(skip, 4))) d(x) = 1.0 / std::sqrt(3.0);
      omega += 0.25 * d * d.adjoint();
    }
    for (double v : {0.2, 0.5}) {
      const double s = 0.3;
      Matrix m = s * omega;
      m(0, 0) += v;
      m /= m.trace().real();
      const double scale = v + s;
      CHECK(we_witness_value(DensityOperator(4, m)) * scale == doctest::Approx(3 * v - s).epsilon(1e-12));
    }

    const Vector rect = from_support(4, {{0b1100, 1}, {0b1010, 1}, {0b0101, 1}, {0b0011, 1}});
    CHECK(std::abs(we_witness_value(DensityOperator::pure(rect))) < 1e-12);
    CHECK_THROWS_AS(we_witness_value(DensityOperator::basis_state(4, 1)), DomainError);
  }
}
