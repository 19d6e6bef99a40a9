#include "liemech/dynamics.hpp"
#include "liemech/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace liemech;
using namespace liemech::dynamics;

namespace {

BodyParams body(const Vec3& m, const Vec3& i) {
    BodyParams p;
    p.m = m;
    p.i = i;
    return p;
}

double max_drift(const Trajectory& traj, auto&& quantity) {
    const double q0 = quantity(traj.samples.front().state);
    double worst = 0.0;
    for (const auto& s : traj.samples) worst = std::max(worst, std::abs(quantity(s.state) - q0));
    return worst;
}

}  // namespace

TEST_CASE("permutation symbol") {
    CHECK(permutation_symbol(0, 1, 2) == 1);
    CHECK(permutation_symbol(1, 2, 0) == 1);
    CHECK(permutation_symbol(2, 1, 0) == -1);
    CHECK(permutation_symbol(0, 0, 2) == 0);
}

TEST_CASE("Euler equations") {
    const Vec3 I(1, 2, 3);
    const Vec3 w(0.4, -1.1, 0.7);
    CHECK((euler_rhs(I, w, Vec3::Zero()) - oracle::euler_free(I, w)).norm() < 1e-15);
    // A constant torque about a principal axis of a body at rest spins it up linearly.
    CHECK((euler_rhs(I, Vec3::Zero(), Vec3(0, 0, 6)) - Vec3(0, 0, 2)).norm() == 0.0);
    // Forced form with the terms on the left: I1 w1' + (I3 - I2) w2 w3 = T1, cyclically.
    const Vec3 T(0.3, -0.2, 0.5);
    const Vec3 wd = euler_rhs(I, w, T);
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        CHECK(std::abs(I[a] * wd[a] + (I[c] - I[b]) * w[b] * w[c] - T[a]) < 1e-15);
    }
    // Satellite equations are the same with the control torque.
    CHECK((satellite_rhs(I, w, Vec3(1, 2, 3)) - euler_rhs(I, w, Vec3(1, 2, 3))).norm() < 1e-15);
}

TEST_CASE("Newton-Euler scalar form against two other routes") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> pos(0.5, 3.0);
    for (int k = 0; k < 200; ++k) {
        const BodyParams p = body(Vec3(pos(rng), pos(rng), pos(rng)), Vec3(pos(rng), pos(rng), pos(rng)));
        BodyState s;
        s.v = oracle::random_vec3(rng, 2);
        s.w = oracle::random_vec3(rng, 2);
        const Wrench wr{oracle::random_vec3(rng, 1), oracle::random_vec3(rng, 1)};
        const auto a = newton_euler_rhs(p, s, wr);
        const auto b = kirchhoff_lagrangian_rhs(p, s, wr);
        const auto c = kirchhoff_submarine_rhs(p, s, wr);
        CHECK((a.v_dot - b.v_dot).norm() < 1e-13);
        CHECK((a.w_dot - b.w_dot).norm() < 1e-13);
        CHECK((a.v_dot - c.v_dot).norm() < 1e-13);
        CHECK((a.w_dot - c.w_dot).norm() < 1e-13);

        // Direct vector form: M v' = F + p x w, I w' = T + pi x w + p x v.
        const Vec3 pm = p.m.cwiseProduct(s.v);
        const Vec3 pi = p.i.cwiseProduct(s.w);
        CHECK((a.v_dot - (wr.f + pm.cross(s.w)).cwiseQuotient(p.m)).norm() < 1e-13);
        CHECK((a.w_dot - (wr.t + pi.cross(s.w) + pm.cross(s.v)).cwiseQuotient(p.i)).norm() < 1e-13);
    }
}

TEST_CASE("heavy top right-hand side") {
    BodyParams p = body(Vec3::Ones(), Vec3(1, 2, 3));
    p.mgl = 1.5;
    p.chi = Vec3(0, 0, 1);
    const Vec3 mom(0.3, -0.2, 0.9);
    const Vec3 gamma = Vec3(0.6, 0, 0.8);
    const auto r = heavy_top_rhs(mom, gamma, p);
    const Vec3 omega = mom.cwiseQuotient(p.i);
    CHECK((r.gamma_dot - gamma.cross(omega)).norm() < 1e-15);
    // Energy is conserved along the vector field: dE = Omega . p_dot + Mgl chi . gamma_dot.
    CHECK(std::abs(omega.dot(r.p_dot) + p.mgl * p.chi->dot(r.gamma_dot)) < 1e-14);
    // |gamma| is a Casimir.
    CHECK(std::abs(gamma.dot(r.gamma_dot)) < 1e-15);

    BodyState s;
    CHECK_THROWS_AS(heavy_top_rhs(s, p), Error);
}

TEST_CASE("hovercraft") {
    const Vec3 d = hovercraft_rhs(2.0, 0.5, {1.0, 0.5, 0.2}, Vec2(0.4, -0.6), 0.3);
    CHECK(d[0] == doctest::Approx(0.2 * 0.5 + 0.4 / 2.0));
    CHECK(d[1] == doctest::Approx(-0.2 * 1.0 - 0.6 / 2.0));
    CHECK(d[2] == doctest::Approx(-0.3 * -0.6 / 0.5));
}

TEST_CASE("parameter validation names the field") {
    BodyParams p = body(Vec3(1, 1, 1), Vec3(1, -2, 3));
    try {
        p.validate();
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ValidationError);
        CHECK(std::string(e.what()).find("inertia[1]") != std::string::npos);
    }
    p.i = Vec3(1, 2, 3);
    p.chi = Vec3(0, 0, 2);
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("free rigid body conserves |pi|^2 and energy") {
    const BodyParams p = body(Vec3::Ones(), Vec3(1, 2, 3));
    BodyState s0;
    s0.w = Vec3(1, 1, 1);
    const auto traj = integrate(System::FreeEuler, p, s0, 1e-3, 10000);
    CHECK(traj.samples.size() == 10001);
    CHECK(max_drift(traj, [&](const BodyState& s) { return p.i.cwiseProduct(s.w).squaredNorm(); }) < 1e-8);
    CHECK(max_drift(traj, [&](const BodyState& s) { return kinetic_energy(p, s); }) < 1e-8);

    // The spatial angular momentum R pi is constant too, which tests the pose reconstruction.
    const Vec3 l0 = traj.samples.front().state.pose.rot * p.i.cwiseProduct(s0.w);
    const auto& last = traj.samples.back().state;
    CHECK((last.pose.rot * p.i.cwiseProduct(last.w) - l0).norm() < 1e-5);
}

TEST_CASE("midpoint integration is second order") {
    const BodyParams p = body(Vec3::Ones(), Vec3(1, 2, 3));
    BodyState s0;
    s0.w = Vec3(0.5, -0.3, 0.8);
    const auto ref = integrate(System::FreeEuler, p, s0, 1e-4, 10000).samples.back().state.w;
    const auto coarse = integrate(System::FreeEuler, p, s0, 1e-2, 100, Method::Midpoint).samples.back().state.w;
    const auto fine = integrate(System::FreeEuler, p, s0, 5e-3, 200, Method::Midpoint).samples.back().state.w;
    const double ratio = (coarse - ref).norm() / (fine - ref).norm();
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("heavy top conserves |gamma| and energy") {
    BodyParams p = body(Vec3::Ones(), Vec3(1, 2, 3));
    p.mgl = 1.0;
    p.chi = Vec3(0, 0, 1);
    BodyState s0;
    s0.w = Vec3(0.3, -0.5, 1.2);
    s0.gamma = Vec3(0.6, 0, 0.8);
    const auto traj = integrate(System::HeavyTop, p, s0, 1e-3, 10000);
    CHECK(max_drift(traj, [](const BodyState& s) { return s.gamma->norm(); }) < 1e-8);
    CHECK(max_drift(traj, [&](const BodyState& s) { return heavy_top_energy(p, p.i.cwiseProduct(s.w), *s.gamma); }) <
          1e-6);

    BodyState no_gamma;
    CHECK_THROWS_AS(integrate(System::HeavyTop, p, no_gamma, 1e-3, 10), Error);
}

TEST_CASE("submarine conserves kinetic energy when unforced") {
    const BodyParams p = body(Vec3(1, 2, 3), Vec3(4, 5, 6));
    BodyState s0;
    s0.v = Vec3(0.5, -0.2, 0.1);
    s0.w = Vec3(0.3, 0.4, -0.6);
    const auto traj = integrate(System::Submarine, p, s0, 1e-3, 10000);
    CHECK(max_drift(traj, [&](const BodyState& s) { return kinetic_energy(p, s); }) < 1e-8);
    // Kirchhoff Casimirs: |p|^2 and p . pi.
    CHECK(max_drift(traj, [&](const BodyState& s) { return momenta(p, s).p.squaredNorm(); }) < 1e-8);
    CHECK(max_drift(traj, [&](const BodyState& s) {
              const auto m = momenta(p, s);
              return m.p.dot(m.pi);
          }) < 1e-8);
}

TEST_CASE("controls enter through the applied wrench") {
    BodyParams p = body(Vec3(2, 2, 2), Vec3(1, 1, 0.5));
    p.h = 0.4;
    BodyState s0;
    const ControlSignal u = [](double) { return Wrench{Vec3(1.0, 0.0, 0.0), Vec3::Zero()}; };
    const auto traj = integrate(System::Hovercraft, p, s0, 1e-3, 1000, Method::Rk4, u);
    // Pure forward thrust from rest: v_x = t / m.
    CHECK(traj.samples.back().state.v[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(traj.samples.back().state.pose.p[0] == doctest::Approx(0.25).epsilon(1e-9));
    const Wrench w = applied_wrench(System::Hovercraft, p, Wrench{Vec3(0, 2, 0), Vec3::Zero()});
    CHECK(w.t[2] == doctest::Approx(-0.8));
}

TEST_CASE("non-finite states are reported with the step") {
    BodyParams p = body(Vec3::Ones(), Vec3(1, 2, 3));
    BodyState s0;
    s0.w = Vec3(1e200, 1e200, 1e200);
    try {
        integrate(System::FreeEuler, p, s0, 1e-3, 10);
        FAIL("expected NonFiniteState");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFiniteState);
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
}

TEST_CASE("pose reconstruction") {
    // Constant twist: the reconstructed pose equals exp of the twist times t.
    const Vec3 v(1, 0, 0.5);
    const Vec3 w(0, 0, 0.8);
    const int n = 1000;
    const double dt = 1e-3;
    const std::vector<Vec3> vs(n + 1, v);
    const std::vector<Vec3> ws(n + 1, w);
    const auto poses = reconstruct_pose(vs, ws, groups::Pose3::identity(), dt);
    REQUIRE(poses.size() == static_cast<std::size_t>(n + 1));
    const Eigen::Matrix4d exact = oracle::series_exp(oracle::twist_matrix(w * n * dt, v * n * dt));
    CHECK((poses.back().matrix() - exact).norm() < 1e-6);
}

TEST_CASE("trajectory CSV round trip") {
    const BodyParams p = body(Vec3(1, 2, 3), Vec3(4, 5, 6));
    BodyState s0;
    s0.v = Vec3(0.1, 0.2, 0.3);
    s0.w = Vec3(0.3, -0.1, 0.2);
    const auto traj = integrate(System::Submarine, p, s0, 0.01, 50);
    std::stringstream ss;
    write_trajectory_csv(ss, traj);
    const std::string text = ss.str();
    CHECK(text.rfind(kTrajectoryHeader, 0) == 0);

    std::istringstream in(text);
    const auto back = read_trajectory_csv(in);
    REQUIRE(back.samples.size() == traj.samples.size());
    for (std::size_t k = 0; k < back.samples.size(); ++k) {
        CHECK(back.samples[k].t == traj.samples[k].t);
        CHECK(back.samples[k].state.v == traj.samples[k].state.v);
        CHECK(back.samples[k].state.w == traj.samples[k].state.w);
        CHECK((back.samples[k].state.pose.matrix() - traj.samples[k].state.pose.matrix()).norm() < 1e-14);
    }
    // The pose passes through a rotation matrix, so a rewrite may move the
    // last bit of the quaternion columns; every other column is exact.
    std::stringstream again;
    write_trajectory_csv(again, back);
    std::istringstream a_in(again.str()), t_in(text);
    std::string a_line, t_line;
    while (std::getline(t_in, t_line)) {
        REQUIRE(std::getline(a_in, a_line));
        if (t_line == a_line) continue;
        std::istringstream ac(a_line), tc(t_line);
        std::string a_col, t_col;
        for (int c = 0; std::getline(tc, t_col, ','); ++c) {
            REQUIRE(std::getline(ac, a_col, ','));
            if (c >= 7 && c <= 10) {
                CHECK(std::abs(std::stod(a_col) - std::stod(t_col)) < 1e-15);
            } else {
                CHECK(a_col == t_col);
            }
        }
    }
    CHECK_FALSE(std::getline(a_in, a_line));

    std::istringstream bad("t,vx\n0,1\n");
    CHECK_THROWS_AS(read_trajectory_csv(bad), Error);
}
