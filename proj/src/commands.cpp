#include "liemech/algebra.hpp"
#include "liemech/format.hpp"
#include "liemech/groups.hpp"
#include "liemech/scenario.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace liemech::cli {

namespace {

using namespace groups;

std::string row(std::initializer_list<double> xs) {
    std::string out;
    for (double x : xs) {
        if (!out.empty()) out += ' ';
        out += format_double(x);
    }
    return out;
}

template <class M>
std::string rows(const M& m) {
    std::ostringstream os;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? " " : "") << format_double(m(r, c));
        os << "\n";
    }
    return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Numeric positional arguments with a fixed arity.
class Args {
public:
    Args(std::string_view op, const std::vector<std::string>& raw, std::initializer_list<std::size_t> arities,
         std::string_view usage)
        : op_(op) {
        bool ok = false;
        for (auto a : arities) ok = ok || raw.size() == a;
        if (!ok) {
            throw Error(ErrorKind::UsageError, std::string(op) + " expects " + std::string(usage) + " (got " +
                                                   std::to_string(raw.size()) + " arguments)");
        }
        for (std::size_t k = 0; k < raw.size(); ++k) {
            try {
                x_.push_back(parse_double(raw[k], "argument"));
            } catch (const Error&) {
                throw Error(ErrorKind::UsageError,
                            std::string(op) + " argument " + std::to_string(k + 1) + " is not a number: " + raw[k]);
            }
        }
    }

    double operator[](std::size_t k) const { return x_[k]; }
    std::size_t size() const { return x_.size(); }
    Vec3 vec3(std::size_t k) const { return {x_[k], x_[k + 1], x_[k + 2]}; }
    Vec2 vec2(std::size_t k) const { return {x_[k], x_[k + 1]}; }

private:
    std::string op_;
    std::vector<double> x_;
};

}  // namespace

std::string group_command(std::string_view op, const std::vector<std::string>& args) {
    if (op == "exp-so3") {
        const Args a(op, args, {3}, "wx wy wz");
        return rows(exp_so3(a.vec3(0)).matrix());
    }
    if (op == "log-so3") {
        const Args a(op, args, {9}, "9 rotation entries, row-major");
        Mat3 m;
        for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = a[k];
        const Vec3 w = log_so3(Rotation3::from_matrix(m, 1e-9));
        return row({w[0], w[1], w[2]}) + "\n";
    }
    if (op == "exp-se3") {
        const Args a(op, args, {6}, "wx wy wz vx vy vz");
        return rows(exp_se3({a.vec3(0), a.vec3(3)}).matrix());
    }
    if (op == "log-se3") {
        const Args a(op, args, {12, 16}, "the top 12 or all 16 entries of a 4x4 pose, row-major");
        Mat4 m = Mat4::Identity();
        for (std::size_t k = 0; k < a.size(); ++k) m(k / 4, k % 4) = a[k];
        if (a.size() == 16 && (m.row(3) - Eigen::RowVector4d(0, 0, 0, 1)).norm() > 1e-12) {
            throw Error(ErrorKind::InvalidArgument, "log-se3: bottom row must be 0 0 0 1");
        }
        Pose3 g;
        g.rot = Rotation3::from_matrix(m.topLeftCorner<3, 3>(), 1e-9);
        g.p = m.topRightCorner<3, 1>();
        const Twist t = log_se3(g);
        return row({t.w[0], t.w[1], t.w[2], t.v[0], t.v[1], t.v[2]}) + "\n";
    }
    if (op == "adjoint") {
        const Args a(op, args, {6}, "theta ax ay xi v1 v2 (SE(2) element, se(2) vector)");
        const Se2Vector r = se2_adjoint({Rotation2(a[0]), a.vec2(1)}, {a[3], a.vec2(4)});
        return row({r.xi, r.v[0], r.v[1]}) + "\n";
    }
    if (op == "coadjoint") {
        const Args a(op, args, {6}, "theta ax ay mu alpha1 alpha2 (SE(2) element, se(2)* covector)");
        const Se2Covector r = se2_coadjoint({Rotation2(a[0]), a.vec2(1)}, {a[3], a.vec2(4)});
        return row({r.mu, r.alpha[0], r.alpha[1]}) + "\n";
    }
    if (op == "bracket") {
        const Args a(op, args, {12}, "two se(3) twists: w1 v1 w2 v2");
        const Twist r = se3_bracket({a.vec3(0), a.vec3(3)}, {a.vec3(6), a.vec3(9)});
        return row({r.w[0], r.w[1], r.w[2], r.v[0], r.v[1], r.v[2]}) + "\n";
    }
    if (op == "bch") {
        const Args a(op, args, {6}, "u1 u2 u3 v1 v2 v3");
        const Vec3 r = bch3(a.vec3(0), a.vec3(3));
        return row({r[0], r[1], r[2]}) + "\n";
    }
    if (op == "quaternion") {
        const Args a(op, args, {4}, "ax ay az theta");
        const Quaternion q = quaternion_from_axis_angle(a.vec3(0), a[3]);
        return row({q.scalar, q.vector[0], q.vector[1], q.vector[2]}) + "\n";
    }
    if (op == "catalog") {
        if (args.empty() || args.size() > 2) throw Error(ErrorKind::UsageError, "catalog expects NAME [n]");
        int n = 0;
        if (args.size() == 2) {
            try {
                std::size_t used = 0;
                n = std::stoi(args[1], &used);
                if (used != args[1].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw Error(ErrorKind::UsageError, "catalog rank is not an integer: " + args[1]);
            }
        }
        const auto e = catalog_lookup(args[0], n);
        std::ostringstream os;
        os << e.name;
        if (args.size() == 2) os << "(" << n << ")";
        os << " dim=" << e.dimension << " compact=" << yes_no(e.compact) << " connected=" << yes_no(e.connected)
           << " simply_connected=" << yes_no(e.simply_connected) << " abelian=" << yes_no(e.abelian) << "\n";
        return os.str();
    }
    throw Error(ErrorKind::UsageError,
                "unknown group op '" + std::string(op) +
                    "' (expected exp-so3, log-so3, exp-se3, log-se3, adjoint, coadjoint, bracket, bch, quaternion, catalog)");
}

std::string roots_report(std::string_view family, int rank) {
    if (family.size() != 1) throw Error(ErrorKind::InvalidArgument, "family must be one letter A-G");
    const auto fam = algebra::family_from_char(static_cast<char>(std::toupper(static_cast<unsigned char>(family[0]))));
    if (!fam) throw Error(ErrorKind::InvalidArgument, "unknown family '" + std::string(family) + "'");

    const auto rs = algebra::build_root_system(*fam, rank);
    const auto axioms = algebra::verify_root_system(rs);
    const auto angles = algebra::root_angles(rs);
    const auto base = algebra::simple_roots(rs);
    const auto cm = algebra::cartan_matrix(base);
    const auto diagram = algebra::dynkin_diagram(cm, base);
    const auto labels = algebra::classify_diagram(diagram);

    const auto pass = [](bool b) { return b ? "pass" : "FAIL"; };
    std::ostringstream os;
    os << "system: " << algebra::Label{*fam, rank}.str() << "\n";
    os << rs.size() << " roots\n";
    os << "ambient dimension: " << rs.ambient_dim << "\n";
    os << "axioms: multiples=" << pass(axioms.multiples) << " reflections=" << pass(axioms.reflections)
       << " integrality=" << pass(axioms.integrality) << "\n";
    os << "angles:";
    for (double a : angles) os << " " << format_double(std::round(a * 1e9) / 1e9);
    os << "\n";
    os << "simple roots:\n";
    for (const auto& r : base) os << "  " << algebra::format_root(r) << "\n";
    os << "cartan matrix:\n";
    for (int i = 0; i < cm.size(); ++i) {
        os << " ";
        for (int j = 0; j < cm.size(); ++j) os << " " << cm.a(i, j);
        os << "\n";
    }
    os << "diagram:\n" << diagram.to_text();
    os << "classified:";
    for (std::size_t k = 0; k < labels.size(); ++k) os << (k ? " + " : " ") << labels[k].str();
    os << "\n";
    return os.str();
}

std::string jolt_command(const std::filesystem::path& csv, const Vec3& mass, const Vec3& inertia,
                         std::optional<jolt::Thresholds> thresholds) {
    std::ifstream is(csv);
    if (!is) throw Error(ErrorKind::IoError, "cannot open trajectory file " + csv.string());
    dynamics::Trajectory traj;
    try {
        traj = dynamics::read_trajectory_csv(is);
    } catch (const Error& e) {
        throw Error(e.kind(), csv.string() + ": " + e.what());
    }
    dynamics::BodyParams p;
    p.m = mass;
    p.i = inertia;
    p.validate();
    std::ostringstream os;
    jolt::write_jolt_report(os, jolt::jolt_report(traj, p, thresholds));
    return os.str();
}

}  // namespace liemech::cli
