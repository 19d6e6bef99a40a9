#include "liemech/groups.hpp"

#include "liemech/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>

namespace liemech::groups {

namespace {

constexpr double kPi = std::numbers::pi;

Mat2 planar_j() {
    Mat2 j;
    j << 0.0, 1.0, -1.0, 0.0;
    return j;
}

// sin(x)/x
double sinc(double x) {
    if (std::abs(x) < kSmallAngle) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// (1 - cos x)/x^2, evaluated as 0.5 * (sin(x/2)/(x/2))^2 to avoid cancellation.
double one_minus_cos_over_sq(double x) {
    if (std::abs(x) < kSmallAngle) {
        const double x2 = x * x;
        return 0.5 - x2 / 24.0 + x2 * x2 / 720.0;
    }
    const double s = sinc(0.5 * x);
    return 0.5 * s * s;
}

// (x - sin x)/x^3
double x_minus_sin_over_cube(double x) {
    if (std::abs(x) < kSmallAngle) {
        const double x2 = x * x;
        return 1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0;
    }
    return (x - std::sin(x)) / (x * x * x);
}

double rotation_angle(const Mat3& m) {
    const Vec3 axis_part = vee3(0.5 * (m - m.transpose()));
    const double c = 0.5 * (m.trace() - 1.0);
    return std::atan2(axis_part.norm(), c);
}

}  // namespace

// Rotation2 -------------------------------------------------------------------

Rotation2::Rotation2(double theta) {
    double r = std::remainder(theta, 2.0 * kPi);
    if (r <= -kPi) r = kPi;
    theta_ = r;
}

Mat2 Rotation2::matrix() const {
    const double c = std::cos(theta_);
    const double s = std::sin(theta_);
    Mat2 m;
    m << c, -s, s, c;
    return m;
}

// Rotation3 -------------------------------------------------------------------

Rotation3 Rotation3::from_matrix(const Mat3& m, double tol) {
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidArgument, "rotation matrix has non-finite entries");
    }
    const double ortho = (m.transpose() * m - Mat3::Identity()).norm();
    const double det = m.determinant();
    if (ortho > tol || std::abs(det - 1.0) > tol) {
        throw Error(ErrorKind::InvalidArgument,
                    "matrix is not in SO(3): |m^T m - I| = " + std::to_string(ortho) +
                        ", det = " + std::to_string(det));
    }
    return from_matrix_unchecked(m);
}

Rotation3 Rotation3::from_matrix_unchecked(const Mat3& m) {
    Rotation3 r;
    r.m_ = m;
    return r;
}

double Rotation3::angle() const { return rotation_angle(m_); }

// Poses -----------------------------------------------------------------------

Mat3 Pose2::matrix() const {
    Mat3 m = Mat3::Identity();
    m.topLeftCorner<2, 2>() = rot.matrix();
    m.topRightCorner<2, 1>() = a;
    return m;
}

Pose2 Pose2::inverse() const {
    const Rotation2 r_inv = rot.inverse();
    return {r_inv, -(r_inv * a)};
}

Pose2 Pose2::operator*(const Pose2& other) const {
    return {rot * other.rot, rot * other.a + a};
}

Pose3 Pose3::from_matrix(const Mat4& m) {
    const double bottom = (m.row(3) - Eigen::RowVector4d(0, 0, 0, 1)).norm();
    if (bottom > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "homogeneous matrix bottom row is not (0,0,0,1)");
    }
    return {Rotation3::from_matrix(m.topLeftCorner<3, 3>()), m.topRightCorner<3, 1>()};
}

Mat4 Pose3::matrix() const {
    Mat4 m = Mat4::Identity();
    m.topLeftCorner<3, 3>() = rot.matrix();
    m.topRightCorner<3, 1>() = p;
    return m;
}

Pose3 Pose3::inverse() const {
    const Rotation3 r_inv = rot.inverse();
    return {r_inv, -(r_inv * p)};
}

Pose3 Pose3::operator*(const Pose3& other) const {
    return {rot * other.rot, rot * other.p + p};
}

// Quaternion ------------------------------------------------------------------

double Quaternion::norm() const {
    return std::sqrt(scalar * scalar + vector.squaredNorm());
}

Rotation3 Quaternion::to_rotation() const {
    const double n = norm();
    const double s = scalar / n;
    const Vec3 v = vector / n;
    const Mat3 m = (s * s - v.squaredNorm()) * Mat3::Identity() + 2.0 * v * v.transpose() +
                   2.0 * s * hat3(v);
    return Rotation3::from_matrix_unchecked(m);
}

Quaternion Quaternion::from_rotation(const Rotation3& r) {
    const Mat3& m = r.matrix();
    const double tr = m.trace();
    Quaternion q;
    if (tr > 0.0) {
        const double s = 2.0 * std::sqrt(1.0 + tr);
        q.scalar = 0.25 * s;
        q.vector = Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)) / s;
    } else {
        int i = 0;
        if (m(1, 1) > m(0, 0)) i = 1;
        if (m(2, 2) > m(i, i)) i = 2;
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        const double s = 2.0 * std::sqrt(1.0 + m(i, i) - m(j, j) - m(k, k));
        q.vector[i] = 0.25 * s;
        q.vector[j] = (m(j, i) + m(i, j)) / s;
        q.vector[k] = (m(k, i) + m(i, k)) / s;
        q.scalar = (m(k, j) - m(j, k)) / s;
    }
    if (q.scalar < 0.0) {
        q.scalar = -q.scalar;
        q.vector = -q.vector;
    }
    const double n = q.norm();
    q.scalar /= n;
    q.vector /= n;
    return q;
}

// Hat / vee -------------------------------------------------------------------

Mat3 hat3(const Vec3& w) {
    Mat3 m;
    m << 0.0, -w.z(), w.y(),
         w.z(), 0.0, -w.x(),
         -w.y(), w.x(), 0.0;
    return m;
}

Vec3 vee3(const Mat3& m) {
    if ((m + m.transpose()).norm() > 1e-9) {
        throw Error(ErrorKind::NotSkew, "vee3 input is not skew-symmetric");
    }
    return {m(2, 1), m(0, 2), m(1, 0)};
}

Mat4 hat_se3(const Twist& t) {
    Mat4 m = Mat4::Zero();
    m.topLeftCorner<3, 3>() = hat3(t.w);
    m.topRightCorner<3, 1>() = t.v;
    return m;
}

Twist vee_se3(const Mat4& m) {
    return {vee3(m.topLeftCorner<3, 3>()), m.topRightCorner<3, 1>()};
}

Mat3 hat_se2(const Se2Vector& x) {
    Mat3 m = Mat3::Zero();
    m.topLeftCorner<2, 2>() = -x.xi * planar_j();
    m.topRightCorner<2, 1>() = x.v;
    return m;
}

Se2Vector vee_se2(const Mat3& m) {
    return {m(1, 0), m.topRightCorner<2, 1>()};
}

// Exponentials and logarithms -------------------------------------------------

Rotation3 exp_so3(const Vec3& w) {
    const double theta = w.norm();
    const Mat3 k = hat3(w);
    const Mat3 m = Mat3::Identity() + sinc(theta) * k + one_minus_cos_over_sq(theta) * k * k;
    return Rotation3::from_matrix_unchecked(m);
}

Vec3 log_so3(const Rotation3& r) {
    const Mat3& m = r.matrix();
    if (m.trace() <= -1.0 + kAngleLimitMargin) {
        throw Error(ErrorKind::NearAngleLimit,
                    "rotation angle is too close to pi for a unique logarithm (trace = " +
                        std::to_string(m.trace()) + ")");
    }
    const Vec3 axis_part(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)),
                         0.5 * (m(1, 0) - m(0, 1)));
    const double theta = std::atan2(axis_part.norm(), 0.5 * (m.trace() - 1.0));
    // axis_part = sin(theta) * axis
    return axis_part / sinc(theta);
}

Mat3 so3_left_jacobian(const Vec3& w) {
    const double theta = w.norm();
    const Mat3 k = hat3(w);
    return Mat3::Identity() + one_minus_cos_over_sq(theta) * k + x_minus_sin_over_cube(theta) * k * k;
}

Pose3 exp_se3(const Twist& t) {
    return {exp_so3(t.w), so3_left_jacobian(t.w) * t.v};
}

Twist log_se3(const Pose3& g) {
    const Vec3 w = log_so3(g.rot);
    const Vec3 v = so3_left_jacobian(w).partialPivLu().solve(g.p);
    return {w, v};
}

// Brackets and adjoint actions ------------------------------------------------

Vec3 ad_so3(const Vec3& u, const Vec3& v) { return u.cross(v); }

Twist se3_bracket(const Twist& a, const Twist& b) {
    return {a.w.cross(b.w), a.w.cross(b.v) - b.w.cross(a.v)};
}

Se2Vector se2_bracket(const Se2Vector& a, const Se2Vector& b) {
    const Mat2 jt = planar_j().transpose();
    return {0.0, a.xi * (jt * b.v) - b.xi * (jt * a.v)};
}

Se2Vector se2_adjoint(const Pose2& g, const Se2Vector& x) {
    return {x.xi, x.xi * (planar_j() * g.a) + g.rot * x.v};
}

Se2Covector se2_coadjoint(const Pose2& g, const Se2Covector& m) {
    const Vec2 r_alpha = g.rot * m.alpha;
    return {m.mu - r_alpha.dot(planar_j() * g.a), r_alpha};
}

double pairing(const Se2Covector& m, const Se2Vector& x) { return m.mu * x.xi + m.alpha.dot(x.v); }

double adjoint_conjugation_check(const Rotation3& g, const Vec3& xi) {
    const Mat3 lhs = exp_so3(g * xi).matrix();
    const Mat3 rhs = g.matrix() * exp_so3(xi).matrix() * g.matrix().transpose();
    return (lhs - rhs).norm();
}

// General matrix exponential --------------------------------------------------

MatX matrix_exp(const MatX& a) {
    if (a.rows() != a.cols() || a.rows() < 1) {
        throw Error(ErrorKind::InvalidArgument, "matrix_exp needs a non-empty square matrix");
    }
    if (!a.allFinite()) {
        throw Error(ErrorKind::InvalidArgument, "matrix_exp input has non-finite entries");
    }
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    }
    const MatX scaled = a / std::ldexp(1.0, squarings);

    // ||scaled|| <= 0.5, so 20 terms leave a remainder below 0.5^21 / 21!.
    const auto n = a.rows();
    MatX result = MatX::Identity(n, n);
    MatX term = MatX::Identity(n, n);
    for (int i = 1; i <= 20; ++i) {
        term = term * scaled / static_cast<double>(i);
        result += term;
    }
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

Vec3 bch3(const Vec3& u, const Vec3& v) {
    if (u.norm() > 0.5 || v.norm() > 0.5) {
        throw Error(ErrorKind::OutOfTrustRegion,
                    "bch3 requires |u|, |v| <= 0.5 (got " + std::to_string(u.norm()) + ", " +
                        std::to_string(v.norm()) + ")");
    }
    const Vec3 uv = ad_so3(u, v);
    return u + v + 0.5 * uv + (ad_so3(uv, v) - ad_so3(uv, u)) / 12.0;
}

// Rotations from parameters ---------------------------------------------------

Quaternion quaternion_from_axis_angle(const Vec3& axis, double theta) {
    if (std::abs(axis.norm() - 1.0) > 1e-9) {
        throw Error(ErrorKind::NotUnitAxis,
                    "rotation axis must be a unit vector (norm " + std::to_string(axis.norm()) + ")");
    }
    return {std::cos(0.5 * theta), axis * std::sin(0.5 * theta)};
}

Mat3 rotation_x(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Mat3 m;
    m << 1.0, 0.0, 0.0,
         0.0, c, -s,
         0.0, s, c;
    return m;
}

Mat3 rotation_y(double psi) {
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    Mat3 m;
    m << c, 0.0, s,
         0.0, 1.0, 0.0,
         -s, 0.0, c;
    return m;
}

Mat3 rotation_z(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat3 m;
    m << c, -s, 0.0,
         s, c, 0.0,
         0.0, 0.0, 1.0;
    return m;
}

Rotation3 euler_angles_to_rotation(double phi, double psi, double theta) {
    return Rotation3::from_matrix_unchecked(rotation_x(phi) * rotation_y(psi) * rotation_z(theta));
}

// SO(2) action ----------------------------------------------------------------

Vec2 so2_generator_field(double xi, const Vec2& point) {
    return {-xi * point.y(), xi * point.x()};
}

double momentum_map_so2(double x, double y, double px, double py) { return x * py - y * px; }

// Galilei group ---------------------------------------------------------------

GalileiTransform GalileiTransform::inverse() const {
    const Rotation3 r_inv = rot.inverse();
    GalileiTransform g;
    g.s = -s;
    g.rot = r_inv;
    g.vel = -(r_inv * vel);
    g.a = r_inv * (vel * s - a);
    return g;
}

Event galilei_apply(const GalileiTransform& g, const Event& e) {
    return {e.t + g.s, g.rot * e.x + g.vel * e.t + g.a};
}

GalileiTransform galilei_compose(const GalileiTransform& g2, const GalileiTransform& g1) {
    GalileiTransform g;
    g.s = g1.s + g2.s;
    g.rot = g2.rot * g1.rot;
    g.vel = g2.rot * g1.vel + g2.vel;
    g.a = g2.rot * g1.a + g2.vel * g1.s + g2.a;
    return g;
}

// Charts ----------------------------------------------------------------------

VecX stereographic_transition(const VecX& z) {
    const double n2 = z.squaredNorm();
    if (!(n2 > 0.0)) {
        throw Error(ErrorKind::ZeroInput, "stereographic transition is undefined at the origin");
    }
    return z / n2;
}

// Catalog ---------------------------------------------------------------------

GroupCatalogEntry catalog_lookup(std::string_view name, int n) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });

    const auto needs_rank = [&]() {
        if (n < 1) {
            throw Error(ErrorKind::InvalidArgument,
                        "group " + key + " needs a rank parameter n >= 1 (got " + std::to_string(n) + ")");
        }
    };

    GroupCatalogEntry e;
    e.name = key;
    if (key == "R") {
        needs_rank();
        e = {key, n, false, true, true, true};
    } else if (key == "RX") {
        e = {key, 1, false, false, false, true};
    } else if (key == "R>0") {
        e = {key, 1, false, true, true, true};
    } else if (key == "S1") {
        e = {key, 1, true, true, false, true};
    } else if (key == "HX") {
        e = {key, 4, false, true, true, false};
    } else if (key == "S3") {
        e = {key, 3, true, true, true, false};
    } else if (key == "GL") {
        needs_rank();
        e = {key, n * n, false, false, false, n == 1};
    } else if (key == "GL+") {
        needs_rank();
        e = {key, n * n, false, true, true, n == 1};
    } else if (key == "SL") {
        needs_rank();
        e = {key, n * n - 1, n == 1, true, true, n == 1};
    } else if (key == "O") {
        needs_rank();
        e = {key, n * (n - 1) / 2, true, false, false, n == 1};
    } else if (key == "SO") {
        needs_rank();
        e = {key, n * (n - 1) / 2, true, true, n < 2, n <= 2};
    } else if (key == "U") {
        needs_rank();
        e = {key, n * n, true, true, false, n == 1};
    } else if (key == "SU") {
        needs_rank();
        e = {key, n * n - 1, true, true, true, n == 1};
    } else {
        throw Error(ErrorKind::UnknownGroup, "no catalog entry for group '" + std::string(name) + "'");
    }
    return e;
}

}  // namespace liemech::groups
