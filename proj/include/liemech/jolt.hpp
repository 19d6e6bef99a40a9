#pragma once

#include "liemech/dynamics.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace liemech::jolt {

using dynamics::BodyParams;
using dynamics::Trajectory;
using groups::Vec3;

/// Body-frame velocities with their first (acceleration) and second (jerk) derivatives.
struct KinematicDerivatives {
    Vec3 v = Vec3::Zero();
    Vec3 w = Vec3::Zero();
    Vec3 a_v = Vec3::Zero();
    Vec3 a_w = Vec3::Zero();
    Vec3 j_v = Vec3::Zero();
    Vec3 j_w = Vec3::Zero();
};

struct JoltSample {
    double t = 0.0;
    Vec3 f_dot = Vec3::Zero();  // Newton jolt, N/s
    Vec3 t_dot = Vec3::Zero();  // Euler jolt, N m/s
    double f_norm = 0.0;
    double t_norm = 0.0;
};

struct Thresholds {
    double f_dot_max = 0.0;
    double t_dot_max = 0.0;
};

struct Interval {
    double begin = 0.0;
    double end = 0.0;
};

struct JoltReport {
    std::vector<JoltSample> samples;
    double dt = 0.0;
    double peak_f_norm = 0.0;
    double peak_f_time = 0.0;
    double peak_t_norm = 0.0;
    double peak_t_time = 0.0;
    std::optional<Thresholds> thresholds;
    std::vector<Interval> f_exceedances;
    std::vector<Interval> t_exceedances;
};

/// Second-order first-derivative stencil: central inside, one-sided at both ends.
std::vector<Vec3> differentiate(std::span<const Vec3> series, double dt);

/// Second-order second-derivative stencil: (f+ - 2f + f-)/dt^2 inside, the
/// four-point one-sided form at both ends. Exact on cubics.
std::vector<Vec3> second_derivative(std::span<const Vec3> series, double dt);

/// Accelerations from `differentiate`, jerks from `second_derivative` of the
/// velocity series. Needs >= 5 samples with uniform spacing.
///
/// Nesting `differentiate` would also give jerks, but the one-sided end values
/// feed an O(dt) error into the two samples next to each boundary.
std::vector<KinematicDerivatives> derivatives_from_trajectory(const Trajectory& traj);

/// Newton jolt F' = p'' - p' x w - p x w' and
/// Euler jolt T' = pi'' - pi' x w - pi x w' - p' x v - p x v'.
JoltSample se3_jolt(const BodyParams& p, const KinematicDerivatives& k, double t = 0.0);

JoltReport jolt_report(const Trajectory& traj, const BodyParams& p, std::optional<Thresholds> thresholds);

inline constexpr const char* kJoltHeader = "t,Fdot_x,Fdot_y,Fdot_z,Tdot_x,Tdot_y,Tdot_z,Fdot_norm,Tdot_norm";

/// Key/value header, a blank line, then the CSV body.
void write_jolt_report(std::ostream& os, const JoltReport& report);

}  // namespace liemech::jolt
