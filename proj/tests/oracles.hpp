#pragma once

// Independent reference computations. None of these call into the library's
// own exp/log/bracket/jolt code; they exist so tests compare two routes.

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace oracle {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using MatX = Eigen::MatrixXd;

inline Mat3 skew(const Vec3& w) {
    Mat3 m;
    m << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
    return m;
}

inline Mat4 twist_matrix(const Vec3& w, const Vec3& v) {
    Mat4 m = Mat4::Zero();
    m.topLeftCorner<3, 3>() = skew(w);
    m.topRightCorner<3, 1>() = v;
    return m;
}

/// Plain truncated power series sum_{k < terms} A^k / k!.
inline MatX series_exp(const MatX& a, int terms = 60) {
    MatX sum = MatX::Identity(a.rows(), a.cols());
    MatX term = sum;
    for (int k = 1; k < terms; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

inline MatX commutator(const MatX& a, const MatX& b) { return a * b - b * a; }

/// SE(2) element as a 3x3 matrix in the [[-xi J, v], [0, 0]] embedding convention.
inline Mat3 se2_matrix(double xi, double v1, double v2) {
    Mat3 m = Mat3::Zero();
    m(0, 1) = -xi;
    m(1, 0) = xi;
    m(0, 2) = v1;
    m(1, 2) = v2;
    return m;
}

inline Mat3 pose2_matrix(double theta, double a1, double a2) {
    Mat3 m = Mat3::Identity();
    m(0, 0) = std::cos(theta);
    m(0, 1) = -std::sin(theta);
    m(1, 0) = std::sin(theta);
    m(1, 1) = std::cos(theta);
    m(0, 2) = a1;
    m(1, 2) = a2;
    return m;
}

struct JoltInputs {
    Vec3 m, inertia, v, w, vd, wd, vdd, wdd;
};

/// Component-wise SE(3)-jolt with p = M v and pi = I w, written out term by term.
/// F3 carries +m2 v2 w1' (the vector form's p x w' term).
inline void scalar_jolt(const JoltInputs& s, Vec3& f_dot, Vec3& t_dot) {
    const double m1 = s.m[0], m2 = s.m[1], m3 = s.m[2];
    const double I1 = s.inertia[0], I2 = s.inertia[1], I3 = s.inertia[2];
    const double v1 = s.v[0], v2 = s.v[1], v3 = s.v[2];
    const double w1 = s.w[0], w2 = s.w[1], w3 = s.w[2];
    const double dv1 = s.vd[0], dv2 = s.vd[1], dv3 = s.vd[2];
    const double dw1 = s.wd[0], dw2 = s.wd[1], dw3 = s.wd[2];
    const double pdd1 = m1 * s.vdd[0], pdd2 = m2 * s.vdd[1], pdd3 = m3 * s.vdd[2];
    const double idd1 = I1 * s.wdd[0], idd2 = I2 * s.wdd[1], idd3 = I3 * s.wdd[2];

    f_dot[0] = pdd1 - m2 * w3 * dv2 + m3 * (w2 * dv3 + v3 * dw2) - m2 * v2 * dw3;
    f_dot[1] = pdd2 + m1 * w3 * dv1 - m3 * w1 * dv3 - m3 * v3 * dw1 + m1 * v1 * dw3;
    f_dot[2] = pdd3 - m1 * w2 * dv1 + m2 * w1 * dv2 + m2 * v2 * dw1 - m1 * v1 * dw2;

    t_dot[0] = idd1 - (m2 - m3) * (v3 * dv2 + v2 * dv3) - (I2 - I3) * (w3 * dw2 + w2 * dw3);
    t_dot[1] = idd2 + (m1 - m3) * (v3 * dv1 + v1 * dv3) + (I1 - I3) * (w3 * dw1 + w1 * dw3);
    t_dot[2] = idd3 - (m1 - m2) * (v2 * dv1 + v1 * dv2) - (I1 - I2) * (w2 * dw1 + w1 * dw2);
}

/// Torque-free Euler equations written out per axis.
inline Vec3 euler_free(const Vec3& I, const Vec3& w) {
    return {(I[1] - I[2]) * w[1] * w[2] / I[0], (I[2] - I[0]) * w[2] * w[0] / I[1],
            (I[0] - I[1]) * w[0] * w[1] / I[2]};
}

/// d/dt of euler_free along the flow: the chain rule applied to each product.
inline Vec3 euler_free_jerk(const Vec3& I, const Vec3& w) {
    const Vec3 wd = euler_free(I, w);
    return {(I[1] - I[2]) * (wd[1] * w[2] + w[1] * wd[2]) / I[0],
            (I[2] - I[0]) * (wd[2] * w[0] + w[2] * wd[0]) / I[1],
            (I[0] - I[1]) * (wd[0] * w[1] + w[0] * wd[1]) / I[2]};
}

inline Vec3 random_vec3(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng)};
}

/// Uniform direction times a uniform radius in [0, max_norm].
inline Vec3 random_ball(std::mt19937_64& rng, double max_norm) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, max_norm);
    Vec3 d(n(rng), n(rng), n(rng));
    return d.normalized() * u(rng);
}

}  // namespace oracle
