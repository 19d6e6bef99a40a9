#include "liemech/dynamics.hpp"

#include "liemech/error.hpp"
#include "liemech/format.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace liemech::dynamics {

void BodyParams::validate() const {
    for (int k = 0; k < 3; ++k) {
        if (!(m[k] > 0.0) || !std::isfinite(m[k])) {
            throw Error(ErrorKind::ValidationError,
                        "mass[" + std::to_string(k) + "] must be positive (got " + format_double(m[k]) + ")");
        }
        if (!(i[k] > 0.0) || !std::isfinite(i[k])) {
            throw Error(ErrorKind::ValidationError, "inertia[" + std::to_string(k) +
                                                        "] must be positive (got " + format_double(i[k]) + ")");
        }
    }
    if (chi && std::abs(chi->norm() - 1.0) > 1e-9) {
        throw Error(ErrorKind::ValidationError, "chi must be a unit vector (norm " + format_double(chi->norm()) + ")");
    }
}

bool BodyState::finite() const {
    return v.allFinite() && w.allFinite() && pose.p.allFinite() && pose.rot.matrix().allFinite() &&
           (!gamma || gamma->allFinite());
}

int permutation_symbol(int i, int j, int k) {
    if (i == j || j == k || k == i) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

// -----------------------------------------------------------------------------

Vec3 euler_rhs(const Vec3& in, const Vec3& w, const Vec3& t) {
    return {(t[0] + (in[1] - in[2]) * w[1] * w[2]) / in[0],
            (t[1] + (in[2] - in[0]) * w[2] * w[0]) / in[1],
            (t[2] + (in[0] - in[1]) * w[0] * w[1]) / in[2]};
}

HeavyTopRates heavy_top_rhs(const Vec3& p, const Vec3& g, const BodyParams& params) {
    if (!params.chi) throw Error(ErrorKind::ValidationError, "heavy top needs chi");
    const Vec3& in = params.i;
    const Vec3& c = *params.chi;
    const double mgl = params.mgl;
    HeavyTopRates r;
    r.p_dot = {(in[1] - in[2]) / (in[1] * in[2]) * p[1] * p[2] + mgl * (g[1] * c[2] - g[2] * c[1]),
               (in[2] - in[0]) / (in[2] * in[0]) * p[2] * p[0] + mgl * (g[2] * c[0] - g[0] * c[2]),
               (in[0] - in[1]) / (in[0] * in[1]) * p[0] * p[1] + mgl * (g[0] * c[1] - g[1] * c[0])};
    const Vec3 omega = p.cwiseQuotient(in);
    r.gamma_dot = g.cross(omega);
    return r;
}

HeavyTopRates heavy_top_rhs(const BodyState& s, const BodyParams& params) {
    if (!s.gamma) throw Error(ErrorKind::MissingGamma, "heavy top state has no gamma");
    return heavy_top_rhs(params.i.cwiseProduct(s.w), *s.gamma, params);
}

Acceleration newton_euler_rhs(const BodyParams& p, const BodyState& s, const Wrench& wr) {
    const Vec3& m = p.m;
    const Vec3& in = p.i;
    const Vec3& v = s.v;
    const Vec3& w = s.w;
    const Vec3 p_dot{wr.f[0] - m[2] * v[2] * w[1] + m[1] * v[1] * w[2],
                     wr.f[1] + m[2] * v[2] * w[0] - m[0] * v[0] * w[2],
                     wr.f[2] - m[1] * v[1] * w[0] + m[0] * v[0] * w[1]};
    const Vec3 pi_dot{wr.t[0] + (m[1] - m[2]) * v[1] * v[2] + (in[1] - in[2]) * w[1] * w[2],
                      wr.t[1] + (m[2] - m[0]) * v[0] * v[2] + (in[2] - in[0]) * w[0] * w[2],
                      wr.t[2] + (m[0] - m[1]) * v[0] * v[1] + (in[0] - in[1]) * w[0] * w[1]};
    return {p_dot.cwiseQuotient(m), pi_dot.cwiseQuotient(in)};
}

Acceleration kirchhoff_lagrangian_rhs(const BodyParams& p, const BodyState& s, const Wrench& wr) {
    const Momenta mom = momenta(p, s);
    Vec3 p_dot = Vec3::Zero();
    Vec3 pi_dot = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
        double lin = wr.f[i];
        double ang = wr.t[i];
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                const int eps = permutation_symbol(i, j, k);
                if (eps == 0) continue;
                lin += eps * mom.p[j] * s.w[k];
                ang += eps * (mom.pi[j] * s.w[k] + mom.p[j] * s.v[k]);
            }
        }
        p_dot[i] = lin;
        pi_dot[i] = ang;
    }
    return {p_dot.cwiseQuotient(p.m), pi_dot.cwiseQuotient(p.i)};
}

Acceleration kirchhoff_submarine_rhs(const BodyParams& p, const BodyState& s, const Wrench& controls) {
    const Vec3 mv = p.m.cwiseProduct(s.v);
    const Vec3 iw = p.i.cwiseProduct(s.w);
    return {(mv.cross(s.w) + controls.f).cwiseQuotient(p.m),
            (iw.cross(s.w) + mv.cross(s.v) + controls.t).cwiseQuotient(p.i)};
}

Vec3 hovercraft_rhs(double mass, double inertia, const PlanarVelocity& s, const Vec2& u, double h) {
    const double tau = -h;
    return {(mass * s.w * s.vy + u[0]) / mass, (-mass * s.w * s.vx + u[1]) / mass, tau * u[1] / inertia};
}

Vec3 satellite_rhs(const Vec3& inertia, const Vec3& w, const Vec3& control_torque) {
    return (inertia.cwiseProduct(w).cross(w) + control_torque).cwiseQuotient(inertia);
}

// -----------------------------------------------------------------------------

std::vector<Pose3> reconstruct_pose(std::span<const Vec3> v, std::span<const Vec3> w, const Pose3& pose0,
                                    double dt) {
    if (v.size() != w.size()) {
        throw Error(ErrorKind::InvalidArgument, "velocity series have different lengths");
    }
    std::vector<Pose3> poses;
    poses.reserve(v.size());
    if (v.empty()) return poses;
    poses.push_back(pose0);
    Pose3 pose = pose0;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const Vec3 w_mid = 0.5 * (w[k] + w[k + 1]);
        const Vec3 v_mid = 0.5 * (v[k] + v[k + 1]);
        const groups::Rotation3 r_half = pose.rot * groups::exp_so3(0.5 * dt * w_mid);
        pose.p += dt * (r_half * v_mid);
        pose.rot = pose.rot * groups::exp_so3(dt * w_mid);
        poses.push_back(pose);
    }
    return poses;
}

double kinetic_energy(const BodyParams& p, const BodyState& s) {
    return 0.5 * (p.m.dot(s.v.cwiseAbs2()) + p.i.dot(s.w.cwiseAbs2()));
}

Momenta momenta(const BodyParams& p, const BodyState& s) {
    return {p.m.cwiseProduct(s.v), p.i.cwiseProduct(s.w)};
}

double heavy_top_energy(const BodyParams& p, const Vec3& momentum, const Vec3& gamma) {
    const double kinetic = 0.5 * momentum.cwiseAbs2().cwiseQuotient(p.i).sum();
    return kinetic + p.mgl * gamma.dot(p.chi.value_or(Vec3::Zero()));
}

// -----------------------------------------------------------------------------

std::optional<System> system_from_name(std::string_view name) {
    if (name == "free_euler") return System::FreeEuler;
    if (name == "heavy_top") return System::HeavyTop;
    if (name == "hovercraft") return System::Hovercraft;
    if (name == "satellite") return System::Satellite;
    if (name == "submarine") return System::Submarine;
    if (name == "newton_euler") return System::NewtonEuler;
    return std::nullopt;
}

std::string_view system_name(System s) {
    switch (s) {
        case System::FreeEuler: return "free_euler";
        case System::HeavyTop: return "heavy_top";
        case System::Hovercraft: return "hovercraft";
        case System::Satellite: return "satellite";
        case System::Submarine: return "submarine";
        case System::NewtonEuler: return "newton_euler";
    }
    return "unknown";
}

Wrench applied_wrench(System system, const BodyParams& params, const Wrench& control) {
    switch (system) {
        case System::FreeEuler:
        case System::Satellite: return {Vec3::Zero(), control.t};
        case System::HeavyTop: return {};
        case System::Hovercraft: return {Vec3(control.f[0], control.f[1], 0.0), Vec3(0.0, 0.0, -params.h * control.f[1])};
        case System::Submarine:
        case System::NewtonEuler: return control;
    }
    return {};
}

namespace {

VecX pack(System system, const BodyParams& params, const BodyState& s) {
    VecX y(system == System::HeavyTop || system == System::Submarine || system == System::NewtonEuler ? 6 : 3);
    switch (system) {
        case System::FreeEuler:
        case System::Satellite: y << s.w; break;
        case System::HeavyTop: y << params.i.cwiseProduct(s.w), *s.gamma; break;
        case System::Hovercraft: y << s.v[0], s.v[1], s.w[2]; break;
        case System::Submarine:
        case System::NewtonEuler: y << s.v, s.w; break;
    }
    return y;
}

BodyState unpack(System system, const BodyParams& params, const VecX& y) {
    BodyState s;
    switch (system) {
        case System::FreeEuler:
        case System::Satellite: s.w = y.head<3>(); break;
        case System::HeavyTop:
            s.w = y.head<3>().cwiseQuotient(params.i);
            s.gamma = y.tail<3>();
            break;
        case System::Hovercraft:
            s.v = Vec3(y[0], y[1], 0.0);
            s.w = Vec3(0.0, 0.0, y[2]);
            break;
        case System::Submarine:
        case System::NewtonEuler:
            s.v = y.head<3>();
            s.w = y.tail<3>();
            break;
    }
    return s;
}

VecX rhs(System system, const BodyParams& params, const Wrench& control, const VecX& y) {
    VecX dy(y.size());
    switch (system) {
        case System::FreeEuler: dy << euler_rhs(params.i, y.head<3>(), control.t); break;
        case System::Satellite: dy << satellite_rhs(params.i, y.head<3>(), control.t); break;
        case System::HeavyTop: {
            const auto r = heavy_top_rhs(Vec3(y.head<3>()), Vec3(y.tail<3>()), params);
            dy << r.p_dot, r.gamma_dot;
            break;
        }
        case System::Hovercraft:
            dy << hovercraft_rhs(params.m[0], params.i[2], {y[0], y[1], y[2]}, Vec2(control.f[0], control.f[1]),
                                 params.h);
            break;
        case System::Submarine:
        case System::NewtonEuler: {
            BodyState s;
            s.v = y.head<3>();
            s.w = y.tail<3>();
            const auto a = system == System::Submarine ? kirchhoff_submarine_rhs(params, s, control)
                                                       : newton_euler_rhs(params, s, control);
            dy << a.v_dot, a.w_dot;
            break;
        }
    }
    return dy;
}

}  // namespace

Trajectory integrate(System system, const BodyParams& params, const BodyState& s0, double dt, int steps,
                     Method method, const ControlSignal& controls) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorKind::InvalidArgument, "dt must be positive (got " + format_double(dt) + ")");
    }
    if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
    params.validate();
    if (system == System::HeavyTop) {
        if (!s0.gamma) throw Error(ErrorKind::MissingGamma, "heavy top initial state has no gamma");
        if (!params.chi) throw Error(ErrorKind::ValidationError, "heavy top needs chi");
    }
    if (!s0.finite()) throw Error(ErrorKind::NonFiniteState, "initial state is not finite (step 0)");

    const auto control_at = [&](double t) { return controls ? controls(t) : Wrench{}; };
    const auto f = [&](double t, const VecX& y) { return rhs(system, params, control_at(t), y); };

    Trajectory traj;
    traj.dt = dt;
    traj.samples.reserve(static_cast<std::size_t>(steps) + 1);

    VecX y = pack(system, params, s0);
    for (int k = 0; k <= steps; ++k) {
        const double t = k * dt;
        Sample sample;
        sample.t = t;
        sample.state = unpack(system, params, y);
        sample.wrench = applied_wrench(system, params, control_at(t));
        traj.samples.push_back(std::move(sample));
        if (k == steps) break;
        y = method == Method::Rk4 ? rk4_step(f, t, y, dt) : midpoint_step(f, t, y, dt);
        if (!y.allFinite()) {
            throw Error(ErrorKind::NonFiniteState, "state became non-finite at step " + std::to_string(k + 1) +
                                                       " (t = " + format_double((k + 1) * dt) + ")");
        }
    }

    std::vector<Vec3> v;
    std::vector<Vec3> w;
    v.reserve(traj.samples.size());
    w.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        v.push_back(s.state.v);
        w.push_back(s.state.w);
    }
    const auto poses = reconstruct_pose(v, w, s0.pose, dt);
    for (std::size_t k = 0; k < poses.size(); ++k) traj.samples[k].state.pose = poses[k];
    return traj;
}

// -----------------------------------------------------------------------------

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << kTrajectoryHeader << "\n";
    for (const auto& s : traj.samples) {
        const auto q = groups::Quaternion::from_rotation(s.state.pose.rot);
        os << format_double(s.t);
        for (const Vec3* vec : {&s.state.v, &s.state.w}) {
            for (int k = 0; k < 3; ++k) os << "," << format_double((*vec)[k]);
        }
        os << "," << format_double(q.scalar);
        for (int k = 0; k < 3; ++k) os << "," << format_double(q.vector[k]);
        for (int k = 0; k < 3; ++k) os << "," << format_double(s.state.pose.p[k]);
        os << "\n";
    }
}

Trajectory read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::ParseError, "trajectory CSV is empty");
    const std::string header(trim(line));
    const std::string expected(kTrajectoryHeader);
    if (header.compare(0, expected.size(), expected) != 0 ||
        (header.size() > expected.size() && header[expected.size()] != ',')) {
        throw Error(ErrorKind::ParseError, "trajectory CSV header must start with '" + expected + "'");
    }

    Trajectory traj;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() < 14) {
            throw Error(ErrorKind::ParseError, "trajectory CSV line " + std::to_string(line_no) + " has " +
                                                   std::to_string(cols.size()) + " columns, need 14");
        }
        double x[14];
        for (int c = 0; c < 14; ++c) {
            x[c] = parse_double(cols[c], "trajectory CSV line " + std::to_string(line_no) + " column " +
                                              std::to_string(c + 1));
        }
        Sample s;
        s.t = x[0];
        s.state.v = Vec3(x[1], x[2], x[3]);
        s.state.w = Vec3(x[4], x[5], x[6]);
        const groups::Quaternion q{x[7], Vec3(x[8], x[9], x[10])};
        if (!(q.norm() > 0.0)) {
            throw Error(ErrorKind::ParseError, "trajectory CSV line " + std::to_string(line_no) + " has a zero quaternion");
        }
        s.state.pose = {q.to_rotation(), Vec3(x[11], x[12], x[13])};
        traj.samples.push_back(std::move(s));
    }
    if (traj.samples.size() >= 2) traj.dt = traj.samples[1].t - traj.samples[0].t;
    return traj;
}

}  // namespace liemech::dynamics
