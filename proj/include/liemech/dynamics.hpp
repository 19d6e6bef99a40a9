#pragma once

#include "liemech/groups.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace liemech::dynamics {

using groups::Pose3;
using groups::Vec2;
using groups::Vec3;
using groups::VecX;

/// Diagonal mass and inertia plus the per-scenario extras.
struct BodyParams {
    Vec3 m = Vec3::Ones();  // principal masses, kg
    Vec3 i = Vec3::Ones();  // principal moments of inertia, kg m^2
    double mgl = 0.0;       // heavy top: M g l, N m
    std::optional<Vec3> chi;  // heavy top: unit vector towards the center of mass
    double h = 0.0;         // hovercraft lever arm, m

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

struct BodyState {
    Vec3 v = Vec3::Zero();  // body-frame linear velocity
    Vec3 w = Vec3::Zero();  // body-frame angular velocity
    Pose3 pose;             // spatial pose
    std::optional<Vec3> gamma;  // heavy top: gravity direction in the body frame

    bool finite() const;
};

struct Wrench {
    Vec3 f = Vec3::Zero();
    Vec3 t = Vec3::Zero();
};

struct Sample {
    double t = 0.0;
    BodyState state;
    Wrench wrench;
};

struct Trajectory {
    double dt = 0.0;
    std::vector<Sample> samples;
};

/// Levi-Civita symbol on 0-based indices: +1 for (0,1,2) and its cyclic shifts.
int permutation_symbol(int i, int j, int k);

// -----------------------------------------------------------------------------
// Right-hand sides
// -----------------------------------------------------------------------------

/// Forced Euler equations I_k w_k' = T_k + (I_{k+1} - I_{k+2}) w_{k+1} w_{k+2}.
Vec3 euler_rhs(const Vec3& inertia, const Vec3& w, const Vec3& torque);

struct HeavyTopRates {
    Vec3 p_dot;
    Vec3 gamma_dot;
};

/// Heavy top in body angular momentum p and gravity direction gamma.
HeavyTopRates heavy_top_rhs(const Vec3& momentum, const Vec3& gamma, const BodyParams& params);
/// Same, reading p = I w and gamma from the state; throws MissingGamma.
HeavyTopRates heavy_top_rhs(const BodyState& s, const BodyParams& params);

struct Acceleration {
    Vec3 v_dot = Vec3::Zero();
    Vec3 w_dot = Vec3::Zero();
};

/// Coupled Newton-Euler equations in their scalar component form.
Acceleration newton_euler_rhs(const BodyParams& p, const BodyState& s, const Wrench& wr);
/// Same equations through d/dt dE/dv = dE/dv x w + F and
/// d/dt dE/dw = dE/dw x w + dE/dv x v + T.
Acceleration kirchhoff_lagrangian_rhs(const BodyParams& p, const BodyState& s, const Wrench& wr);
/// Kirchhoff equations M v' = Mv x w + f_i u^i, I w' = Iw x w + Mv x v + tau_i u^i.
Acceleration kirchhoff_submarine_rhs(const BodyParams& p, const BodyState& s, const Wrench& controls);

struct PlanarVelocity {
    double vx = 0.0;
    double vy = 0.0;
    double w = 0.0;
};

/// Returns (vx', vy', w') for m vx' = m w vy + u1, m vy' = -m w vx + u2, I w' = -h u2.
Vec3 hovercraft_rhs(double mass, double inertia, const PlanarVelocity& s, const Vec2& u, double h);

/// I w' = Iw x w + tau_i u^i
Vec3 satellite_rhs(const Vec3& inertia, const Vec3& w, const Vec3& control_torque);

// -----------------------------------------------------------------------------
// Kinematics and observables
// -----------------------------------------------------------------------------

/// Geometric pose update with midpoint velocities:
/// R <- R exp(dt w_mid), p <- p + dt R_half v_mid with R_half = R exp(dt w_mid / 2).
std::vector<Pose3> reconstruct_pose(std::span<const Vec3> v, std::span<const Vec3> w, const Pose3& pose0,
                                    double dt);

double kinetic_energy(const BodyParams& p, const BodyState& s);

struct Momenta {
    Vec3 p;   // linear, M v
    Vec3 pi;  // angular, I w
};

Momenta momenta(const BodyParams& p, const BodyState& s);

/// 1/2 sum p_k^2 / I_k + Mgl gamma . chi
double heavy_top_energy(const BodyParams& p, const Vec3& momentum, const Vec3& gamma);

// -----------------------------------------------------------------------------
// Integration
// -----------------------------------------------------------------------------

template <class State, class Rhs>
State rk4_step(const Rhs& f, double t, const State& y, double dt) {
    const State k1 = f(t, y);
    const State k2 = f(t + 0.5 * dt, State(y + 0.5 * dt * k1));
    const State k3 = f(t + 0.5 * dt, State(y + 0.5 * dt * k2));
    const State k4 = f(t + dt, State(y + dt * k3));
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class State, class Rhs>
State midpoint_step(const Rhs& f, double t, const State& y, double dt) {
    const State k1 = f(t, y);
    return y + dt * f(t + 0.5 * dt, State(y + 0.5 * dt * k1));
}

enum class System { FreeEuler, HeavyTop, Hovercraft, Satellite, Submarine, NewtonEuler };
enum class Method { Rk4, Midpoint };

std::optional<System> system_from_name(std::string_view name);
std::string_view system_name(System s);

/// Time-dependent input. For the hovercraft, f.x and f.y carry (u1, u2);
/// for the free body and the satellite only t is used; the heavy top ignores it.
using ControlSignal = std::function<Wrench(double)>;

/// Fixed-step integration; the pose is advanced with reconstruct_pose.
/// Throws NonFiniteState naming the first bad step.
Trajectory integrate(System system, const BodyParams& params, const BodyState& s0, double dt, int steps,
                     Method method = Method::Rk4, const ControlSignal& controls = {});

/// The wrench actually acting on the body for a given system and control value.
Wrench applied_wrench(System system, const BodyParams& params, const Wrench& control);

// -----------------------------------------------------------------------------
// CSV
// -----------------------------------------------------------------------------

inline constexpr const char* kTrajectoryHeader = "t,vx,vy,vz,wx,wy,wz,qw,qx,qy,qz,px,py,pz";

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// Accepts any CSV whose header starts with kTrajectoryHeader; dt is taken from the first two rows.
Trajectory read_trajectory_csv(std::istream& is);

}  // namespace liemech::dynamics
