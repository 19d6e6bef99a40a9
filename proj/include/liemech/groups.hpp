#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace liemech::groups {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

// Below this angle the exp/log coefficients switch to their Taylor series.
inline constexpr double kSmallAngle = 1e-4;
// log on SO(3)/SE(3) refuses angles within this margin of pi.
inline constexpr double kAngleLimitMargin = 1e-6;

/// Planar rotation stored as its angle, normalized to (-pi, pi].
class Rotation2 {
public:
    Rotation2() = default;
    explicit Rotation2(double theta);

    static Rotation2 identity() { return Rotation2(); }

    double angle() const { return theta_; }
    Mat2 matrix() const;
    Rotation2 inverse() const { return Rotation2(-theta_); }

    Rotation2 operator*(const Rotation2& other) const { return Rotation2(theta_ + other.theta_); }
    Vec2 operator*(const Vec2& x) const { return matrix() * x; }

private:
    double theta_ = 0.0;
};

/// Element of SO(3) stored as a full 3x3 matrix.
///
/// from_matrix() checks orthogonality and det = +1 at 1e-12. Products and
/// inverses of valid rotations are not re-checked, so long compositions
/// accumulate rounding drift the same way the raw matrices would.
class Rotation3 {
public:
    Rotation3() : m_(Mat3::Identity()) {}

    static Rotation3 identity() { return Rotation3(); }
    static Rotation3 from_matrix(const Mat3& m, double tol = 1e-12);
    // For matrices known to be rotations up to rounding (products, exp output).
    static Rotation3 from_matrix_unchecked(const Mat3& m);

    const Mat3& matrix() const { return m_; }
    Rotation3 inverse() const { return from_matrix_unchecked(m_.transpose()); }
    double angle() const;

    Rotation3 operator*(const Rotation3& other) const { return from_matrix_unchecked(m_ * other.m_); }
    Vec3 operator*(const Vec3& x) const { return m_ * x; }

private:
    Mat3 m_;
};

/// se(3) element: angular part w, linear part v.
struct Twist {
    Vec3 w = Vec3::Zero();
    Vec3 v = Vec3::Zero();
};

/// se(2) element (xi, v), embedded as [[-xi J, v], [0, 0]].
struct Se2Vector {
    double xi = 0.0;
    Vec2 v = Vec2::Zero();
};

/// se(2)* element (mu, alpha) paired with se(2) by mu*xi + alpha.v.
struct Se2Covector {
    double mu = 0.0;
    Vec2 alpha = Vec2::Zero();
};

struct Pose2 {
    Rotation2 rot;
    Vec2 a = Vec2::Zero();

    static Pose2 identity() { return {}; }
    Mat3 matrix() const;
    Pose2 inverse() const;
    Pose2 operator*(const Pose2& other) const;
    Vec2 act(const Vec2& x) const { return rot * x + a; }
};

struct Pose3 {
    Rotation3 rot;
    Vec3 p = Vec3::Zero();

    static Pose3 identity() { return {}; }
    static Pose3 from_matrix(const Mat4& m);
    Mat4 matrix() const;
    Pose3 inverse() const;
    Pose3 operator*(const Pose3& other) const;
    Vec3 act(const Vec3& x) const { return rot * x + p; }
};

struct Quaternion {
    double scalar = 1.0;
    Vec3 vector = Vec3::Zero();

    double norm() const;
    Rotation3 to_rotation() const;
    // Shepperd's method; the result has scalar >= 0.
    static Quaternion from_rotation(const Rotation3& r);
};

/// Ten-parameter Galilei transformation acting as
/// (t, x) -> (t + s, rot x + vel t + a).
struct GalileiTransform {
    double s = 0.0;
    Vec3 a = Vec3::Zero();
    Vec3 vel = Vec3::Zero();
    Rotation3 rot;

    static GalileiTransform identity() { return {}; }
    GalileiTransform inverse() const;
};

struct Event {
    double t = 0.0;
    Vec3 x = Vec3::Zero();
};

struct GroupCatalogEntry {
    std::string name;
    int dimension = 0;
    bool compact = false;
    bool connected = false;
    bool simply_connected = false;
    bool abelian = false;
};

// so(3) <-> R^3
Mat3 hat3(const Vec3& w);
Vec3 vee3(const Mat3& m);

// 4x4 and 3x3 matrix embeddings of se(3) and se(2)
Mat4 hat_se3(const Twist& t);
Twist vee_se3(const Mat4& m);
Mat3 hat_se2(const Se2Vector& x);
Se2Vector vee_se2(const Mat3& m);

Rotation3 exp_so3(const Vec3& w);
Vec3 log_so3(const Rotation3& r);
// Left Jacobian A(w) with exp_se3(w, v).p = A(w) v.
Mat3 so3_left_jacobian(const Vec3& w);
Pose3 exp_se3(const Twist& t);
Twist log_se3(const Pose3& g);

Vec3 ad_so3(const Vec3& u, const Vec3& v);
Twist se3_bracket(const Twist& a, const Twist& b);
Se2Vector se2_bracket(const Se2Vector& a, const Se2Vector& b);
Se2Vector se2_adjoint(const Pose2& g, const Se2Vector& x);
/// Ad*_{g^-1} m, so that pairing(se2_coadjoint(g, m), se2_adjoint(g, x)) == pairing(m, x).
Se2Covector se2_coadjoint(const Pose2& g, const Se2Covector& m);
double pairing(const Se2Covector& m, const Se2Vector& x);

/// Frobenius norm of exp(g xi) - g exp(xi) g^-1.
double adjoint_conjugation_check(const Rotation3& g, const Vec3& xi);

/// General n x n matrix exponential by scaling and squaring over a truncated series.
MatX matrix_exp(const MatX& a);

/// Third-order Baker-Campbell-Hausdorff on so(3); requires |u|, |v| <= 0.5.
Vec3 bch3(const Vec3& u, const Vec3& v);

Quaternion quaternion_from_axis_angle(const Vec3& axis, double theta);

// One-parameter rotations about x, y and z.
Mat3 rotation_x(double phi);
Mat3 rotation_y(double psi);
Mat3 rotation_z(double theta);
/// R_x(phi) * R_y(psi) * R_z(theta)
Rotation3 euler_angles_to_rotation(double phi, double psi, double theta);

Vec2 so2_generator_field(double xi, const Vec2& point);
double momentum_map_so2(double x, double y, double px, double py);

Event galilei_apply(const GalileiTransform& g, const Event& e);
/// The transform equivalent to applying g1 first, then g2.
GalileiTransform galilei_compose(const GalileiTransform& g2, const GalileiTransform& g1);

VecX stereographic_transition(const VecX& z);

GroupCatalogEntry catalog_lookup(std::string_view name, int n);

}  // namespace liemech::groups
