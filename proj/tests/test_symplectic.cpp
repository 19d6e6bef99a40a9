#include "liemech/error.hpp"
#include "liemech/groups.hpp"
#include "liemech/symplectic.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace liemech;
using namespace liemech::symplectic;

namespace {

MatX random_symmetric(std::mt19937_64& rng, int n, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    MatX s(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) s(i, j) = s(j, i) = g(rng);
    }
    return s;
}

}  // namespace

TEST_CASE("the symplectic form") {
    const MatX j = symplectic_form(2);
    CHECK((j * j + MatX::Identity(4, 4)).norm() == 0.0);
    CHECK((j.transpose() + j).norm() == 0.0);
    CHECK(is_symplectic(j, 1e-15).ok);
    CHECK(is_symplectic(MatX::Identity(6, 6), 1e-15).ok);
    CHECK_FALSE(is_symplectic(2.0 * MatX::Identity(2, 2), 1e-10).ok);
    try {
        is_symplectic(MatX::Identity(3, 3), 1e-10);
        FAIL("expected OddDimension");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OddDimension);
    }
}

TEST_CASE("sp(2n) elements exponentiate to symplectic matrices") {
    std::mt19937_64 rng(41);
    for (int n : {1, 2, 3}) {
        for (int k = 0; k < 20; ++k) {
            const MatX a = symplectic_form(n) * random_symmetric(rng, 2 * n, 0.5);
            CHECK(sp_algebra_residual(a) < 1e-14);
            CHECK(is_symplectic(groups::matrix_exp(a), 1e-10).ok);
        }
    }
    // A generic matrix is neither in sp nor mapped into Sp.
    MatX b(2, 2);
    b << 1, 2, 3, 4;
    CHECK(sp_algebra_residual(b) > 1.0);
}

TEST_CASE("Hamilton's equations for a particle") {
    const ParticleHamiltonian h(2.0, harmonic_potential(3.0));
    PhasePoint z{VecX::Constant(2, 0.5), VecX::Constant(2, 1.0)};
    const VecX d = hamiltonian_rhs(h.gradient_fn(), z);
    // q' = p / m, p' = -k q
    CHECK((d.head(2) - VecX::Constant(2, 0.5)).norm() < 1e-15);
    CHECK((d.tail(2) - VecX::Constant(2, -1.5)).norm() < 1e-15);
    CHECK(h.value(z) == doctest::Approx(0.5 * 2.0 / 2.0 + 0.5 * 3.0 * 0.5));
    CHECK_THROWS_AS(ParticleHamiltonian(0.0, free_potential()), Error);
}

TEST_CASE("oscillator conserves energy and angular momentum") {
    const ParticleHamiltonian h(1.0, harmonic_potential(1.0));
    PhasePoint z0{VecX(2), VecX(2)};
    z0.q << 1, 0;
    z0.p << 0, 0.5;
    const auto flow = hamiltonian_flow(h.gradient_fn(), z0, 1e-3, 10000);
    const double e0 = h.value(z0);
    const double l0 = groups::momentum_map_so2(1, 0, 0, 0.5);
    double de = 0, dl = 0;
    for (const auto& z : flow) {
        de = std::max(de, std::abs(h.value(z) - e0));
        dl = std::max(dl, std::abs(groups::momentum_map_so2(z.q[0], z.q[1], z.p[0], z.p[1]) - l0));
    }
    CHECK(de < 1e-8);
    CHECK(dl < 1e-8);
    // Exact solution q1 = cos t.
    CHECK(std::abs(flow.back().q[0] - std::cos(10.0)) < 1e-9);
}

TEST_CASE("Kepler flow conserves energy and angular momentum") {
    const ParticleHamiltonian h(1.0, kepler_potential(1.0));
    PhasePoint z0{VecX(2), VecX(2)};
    z0.q << 1, 0;
    z0.p << 0, 1.1;
    const auto flow = hamiltonian_flow(h.gradient_fn(), z0, 1e-3, 5000);
    CHECK(std::abs(h.value(flow.back()) - h.value(z0)) < 1e-9);
    const auto& z = flow.back();
    CHECK(std::abs(groups::momentum_map_so2(z.q[0], z.q[1], z.p[0], z.p[1]) - 1.1) < 1e-9);
}

TEST_CASE("canonical transformations") {
    // Time-t flow of the oscillator is canonical; a pure scaling of q is not.
    const ParticleHamiltonian h(1.0, harmonic_potential(2.0));
    const PhaseMap flow = [&](const VecX& z) {
        return hamiltonian_flow(h.gradient_fn(), PhasePoint::from_packed(z), 0.01, 50).back().packed();
    };
    PhasePoint z{VecX::Constant(1, 0.3), VecX::Constant(1, -0.2)};
    CHECK(canonical_check(flow, z, 1e-6).ok);

    const PhaseMap squash = [](const VecX& x) {
        VecX y = x;
        y.head(x.size() / 2) *= 2.0;
        return y;
    };
    CHECK_FALSE(canonical_check(squash, z, 1e-6).ok);

    // A point transformation Q = 2q, P = p / 2 is canonical.
    const PhaseMap point = [](const VecX& x) {
        VecX y = x;
        y.head(x.size() / 2) *= 2.0;
        y.tail(x.size() / 2) *= 0.5;
        return y;
    };
    CHECK(canonical_check(point, z, 1e-8).ok);
}

TEST_CASE("monodromy of a quadratic Hamiltonian") {
    std::mt19937_64 rng(42);
    const MatX s = random_symmetric(rng, 4, 0.7);
    const MatX phi = quadratic_monodromy(s, 2.0, 1e-3);
    CHECK(is_symplectic(phi, 1e-8).ok);
    const MatX exact = groups::matrix_exp(2.0 * symplectic_form(2) * s);
    CHECK((phi - exact).norm() / exact.norm() < 1e-9);
}
