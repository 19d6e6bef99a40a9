#include "liemech/jolt.hpp"

#include "liemech/error.hpp"
#include "liemech/format.hpp"

#include <cmath>
#include <ostream>

namespace liemech::jolt {

std::vector<Vec3> differentiate(std::span<const Vec3> f, double dt) {
    const std::size_t n = f.size();
    if (n < 3) throw Error(ErrorKind::TooFewSamples, "need at least 3 samples to differentiate");
    std::vector<Vec3> d(n);
    const double inv = 1.0 / (2.0 * dt);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv;
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) * inv;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv;
    return d;
}

std::vector<Vec3> second_derivative(std::span<const Vec3> f, double dt) {
    const std::size_t n = f.size();
    if (n < 4) throw Error(ErrorKind::TooFewSamples, "need at least 4 samples for a second derivative");
    std::vector<Vec3> d(n);
    const double inv = 1.0 / (dt * dt);
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - 2.0 * f[k] + f[k - 1]) * inv;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
    return d;
}

std::vector<KinematicDerivatives> derivatives_from_trajectory(const Trajectory& traj) {
    const auto& s = traj.samples;
    if (s.size() < 5) {
        throw Error(ErrorKind::TooFewSamples,
                    "trajectory has " + std::to_string(s.size()) + " samples, need at least 5");
    }
    const double dt = (s.back().t - s.front().t) / static_cast<double>(s.size() - 1);
    if (!(dt > 0.0)) throw Error(ErrorKind::NonUniformDt, "trajectory times are not increasing");
    for (std::size_t k = 1; k < s.size(); ++k) {
        const double step = s[k].t - s[k - 1].t;
        if (std::abs(step - dt) > 1e-6 * dt) {
            throw Error(ErrorKind::NonUniformDt, "sample " + std::to_string(k) + " has step " +
                                                     format_double(step) + ", expected " + format_double(dt));
        }
    }

    std::vector<Vec3> v;
    std::vector<Vec3> w;
    v.reserve(s.size());
    w.reserve(s.size());
    for (const auto& x : s) {
        v.push_back(x.state.v);
        w.push_back(x.state.w);
    }
    const auto a_v = differentiate(v, dt);
    const auto a_w = differentiate(w, dt);
    const auto j_v = second_derivative(v, dt);
    const auto j_w = second_derivative(w, dt);

    std::vector<KinematicDerivatives> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = {v[k], w[k], a_v[k], a_w[k], j_v[k], j_w[k]};
    return out;
}

JoltSample se3_jolt(const BodyParams& prm, const KinematicDerivatives& k, double t) {
    const Vec3 p = prm.m.cwiseProduct(k.v);
    const Vec3 p_dot = prm.m.cwiseProduct(k.a_v);
    const Vec3 p_ddot = prm.m.cwiseProduct(k.j_v);
    const Vec3 pi = prm.i.cwiseProduct(k.w);
    const Vec3 pi_dot = prm.i.cwiseProduct(k.a_w);
    const Vec3 pi_ddot = prm.i.cwiseProduct(k.j_w);

    JoltSample out;
    out.t = t;
    out.f_dot = p_ddot - p_dot.cross(k.w) - p.cross(k.a_w);
    out.t_dot = pi_ddot - pi_dot.cross(k.w) - pi.cross(k.a_w) - p_dot.cross(k.v) - p.cross(k.a_v);
    out.f_norm = out.f_dot.norm();
    out.t_norm = out.t_dot.norm();
    return out;
}

namespace {

std::vector<Interval> exceedances(const std::vector<JoltSample>& samples, double limit, bool use_f) {
    std::vector<Interval> out;
    bool open = false;
    for (const auto& s : samples) {
        const double value = use_f ? s.f_norm : s.t_norm;
        if (value > limit) {
            if (!open) out.push_back({s.t, s.t});
            out.back().end = s.t;
            open = true;
        } else {
            open = false;
        }
    }
    return out;
}

void write_intervals(std::ostream& os, const std::vector<Interval>& intervals) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (i) os << ";";
        os << "[" << format_double(intervals[i].begin) << "," << format_double(intervals[i].end) << "]";
    }
}

}  // namespace

JoltReport jolt_report(const Trajectory& traj, const BodyParams& p, std::optional<Thresholds> thresholds) {
    const auto derivs = derivatives_from_trajectory(traj);
    JoltReport rep;
    rep.dt = (traj.samples.back().t - traj.samples.front().t) / static_cast<double>(traj.samples.size() - 1);
    rep.samples.reserve(derivs.size());
    for (std::size_t k = 0; k < derivs.size(); ++k) {
        rep.samples.push_back(se3_jolt(p, derivs[k], traj.samples[k].t));
        const auto& s = rep.samples.back();
        if (k == 0 || s.f_norm > rep.peak_f_norm) {
            rep.peak_f_norm = s.f_norm;
            rep.peak_f_time = s.t;
        }
        if (k == 0 || s.t_norm > rep.peak_t_norm) {
            rep.peak_t_norm = s.t_norm;
            rep.peak_t_time = s.t;
        }
    }
    if (thresholds) {
        rep.thresholds = thresholds;
        rep.f_exceedances = exceedances(rep.samples, thresholds->f_dot_max, true);
        rep.t_exceedances = exceedances(rep.samples, thresholds->t_dot_max, false);
    }
    return rep;
}

void write_jolt_report(std::ostream& os, const JoltReport& r) {
    os << "samples: " << r.samples.size() << "\n";
    os << "dt: " << format_double(r.dt) << "\n";
    os << "peak_Fdot_norm: " << format_double(r.peak_f_norm) << "\n";
    os << "peak_Fdot_time: " << format_double(r.peak_f_time) << "\n";
    os << "peak_Tdot_norm: " << format_double(r.peak_t_norm) << "\n";
    os << "peak_Tdot_time: " << format_double(r.peak_t_time) << "\n";
    if (r.thresholds) {
        os << "threshold_Fdot: " << format_double(r.thresholds->f_dot_max) << "\n";
        os << "threshold_Tdot: " << format_double(r.thresholds->t_dot_max) << "\n";
        os << "Fdot_exceedances: ";
        write_intervals(os, r.f_exceedances);
        os << "\nTdot_exceedances: ";
        write_intervals(os, r.t_exceedances);
        os << "\n";
    } else {
        os << "threshold_Fdot: none\nthreshold_Tdot: none\n";
    }
    os << "\n" << kJoltHeader << "\n";
    for (const auto& s : r.samples) {
        os << format_double(s.t);
        for (int k = 0; k < 3; ++k) os << "," << format_double(s.f_dot[k]);
        for (int k = 0; k < 3; ++k) os << "," << format_double(s.t_dot[k]);
        os << "," << format_double(s.f_norm) << "," << format_double(s.t_norm) << "\n";
    }
}

}  // namespace liemech::jolt
