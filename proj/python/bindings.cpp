#include "liemech/algebra.hpp"
#include "liemech/dynamics.hpp"
#include "liemech/error.hpp"
#include "liemech/groups.hpp"
#include "liemech/jolt.hpp"
#include "liemech/scenario.hpp"
#include "liemech/symplectic.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace liemech;
using groups::Mat3;
using groups::Mat4;
using groups::MatX;
using groups::Vec3;

namespace {

dynamics::System parse_system(const std::string& name) {
    const auto s = dynamics::system_from_name(name);
    if (!s) throw Error(ErrorKind::ValidationError, "unknown system '" + name + "'");
    return *s;
}

algebra::Family parse_family(const std::string& family) {
    const auto f = family.size() == 1 ? algebra::family_from_char(family[0]) : std::nullopt;
    if (!f) throw Error(ErrorKind::InvalidArgument, "unknown family '" + family + "'");
    return *f;
}

const algebra::StructureAlgebra& named_algebra(const std::string& name) {
    static const auto so3 = algebra::so3_algebra();
    static const auto se2 = algebra::se2_algebra();
    static const auto se3 = algebra::se3_algebra();
    if (name == "so3") return so3;
    if (name == "se2") return se2;
    if (name == "se3") return se3;
    throw Error(ErrorKind::InvalidArgument, "unknown algebra '" + name + "' (so3, se2, se3)");
}

py::dict trajectory_arrays(const dynamics::Trajectory& traj) {
    const auto n = static_cast<Eigen::Index>(traj.samples.size());
    Eigen::VectorXd t(n);
    Eigen::MatrixXd v(n, 3), w(n, 3), q(n, 4), p(n, 3);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& s = traj.samples[static_cast<std::size_t>(k)];
        t[k] = s.t;
        v.row(k) = s.state.v.transpose();
        w.row(k) = s.state.w.transpose();
        const auto quat = groups::Quaternion::from_rotation(s.state.pose.rot);
        q.row(k) << quat.scalar, quat.vector.transpose();
        p.row(k) = s.state.pose.p.transpose();
    }
    py::dict out;
    out["t"] = t;
    out["v"] = v;
    out["w"] = w;
    out["quaternion"] = q;
    out["position"] = p;
    return out;
}

py::list intervals(const std::vector<jolt::Interval>& list) {
    py::list out;
    for (const auto& iv : list) out.append(py::make_tuple(iv.begin, iv.end));
    return out;
}

}  // namespace

PYBIND11_MODULE(_liemech, m) {
    m.doc() = "Lie groups, root systems and rigid-body mechanics";
    m.attr("__version__") = cli::kToolVersion;

    // Held for the life of the process; the translator may run at any time.
    static const py::handle error = (new py::exception<Error>(m, "LiemechError"))->release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = error(e.what());
            inst.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error.ptr(), inst.ptr());
        }
    });

    // Groups
    m.def("hat3", &groups::hat3, py::arg("w"));
    m.def("vee3", &groups::vee3, py::arg("m"));
    m.def("exp_so3", [](const Vec3& w) { return groups::exp_so3(w).matrix(); }, py::arg("w"));
    m.def("log_so3", [](const Mat3& r) { return groups::log_so3(groups::Rotation3::from_matrix(r)); },
          py::arg("r"));
    m.def("exp_se3", [](const Vec3& w, const Vec3& v) { return groups::exp_se3({w, v}).matrix(); }, py::arg("w"),
          py::arg("v"));
    m.def(
        "log_se3",
        [](const Mat4& g) {
            const auto t = groups::log_se3(groups::Pose3::from_matrix(g));
            return py::make_tuple(t.w, t.v);
        },
        py::arg("g"), "Returns (w, v).");
    m.def(
        "se3_bracket",
        [](const Vec3& w1, const Vec3& v1, const Vec3& w2, const Vec3& v2) {
            const auto t = groups::se3_bracket({w1, v1}, {w2, v2});
            return py::make_tuple(t.w, t.v);
        },
        py::arg("w1"), py::arg("v1"), py::arg("w2"), py::arg("v2"));
    m.def("bch3", &groups::bch3, py::arg("u"), py::arg("v"));
    m.def("matrix_exp", &groups::matrix_exp, py::arg("a"));
    m.def(
        "quaternion_from_rotation",
        [](const Mat3& r) {
            const auto q = groups::Quaternion::from_rotation(groups::Rotation3::from_matrix(r));
            return py::make_tuple(q.scalar, q.vector[0], q.vector[1], q.vector[2]);
        },
        py::arg("r"));
    m.def(
        "catalog",
        [](const std::string& name, int n) {
            const auto e = groups::catalog_lookup(name, n);
            py::dict d;
            d["name"] = e.name;
            d["dimension"] = e.dimension;
            d["compact"] = e.compact;
            d["connected"] = e.connected;
            d["simply_connected"] = e.simply_connected;
            d["abelian"] = e.abelian;
            return d;
        },
        py::arg("name"), py::arg("n") = 0);
    m.def("momentum_map_so2", &groups::momentum_map_so2, py::arg("x"), py::arg("y"), py::arg("px"), py::arg("py"));

    // Algebras and root systems
    m.def("jacobi_defect", [](const std::string& name) { return algebra::jacobi_defect(named_algebra(name)); },
          py::arg("algebra"));
    m.def("killing_gram", [](const std::string& name) { return algebra::killing_gram(named_algebra(name)); },
          py::arg("algebra"));
    m.def(
        "root_system",
        [](const std::string& family, int rank) {
            const auto rs = algebra::build_root_system(parse_family(family), rank);
            const auto base = algebra::simple_roots(rs);
            const auto cm = algebra::cartan_matrix(base);
            const auto diagram = algebra::dynkin_diagram(cm, base);
            py::list labels;
            for (const auto& l : algebra::classify_diagram(diagram)) labels.append(l.str());
            py::list simple;
            for (const auto& r : base) simple.append(algebra::format_root(r));
            py::dict d;
            d["count"] = rs.size();
            d["ambient_dim"] = rs.ambient_dim;
            d["simple_roots"] = simple;
            d["cartan"] = Eigen::MatrixXi(cm.a);
            d["classified"] = labels;
            d["angles"] = algebra::root_angles(rs);
            return d;
        },
        py::arg("family"), py::arg("rank"));
    m.def("roots_report", [](const std::string& f, int rank) { return cli::roots_report(f, rank); },
          py::arg("family"), py::arg("rank"));

    // Rigid bodies
    m.def(
        "integrate",
        [](const std::string& system, const Vec3& i, const Vec3& w0, double dt, int steps, const Vec3& mass,
           const Vec3& v0, double mgl, std::optional<Vec3> chi, std::optional<Vec3> gamma, double h,
           const std::string& method) {
            dynamics::BodyParams p;
            p.i = i;
            p.m = mass;
            p.mgl = mgl;
            p.chi = chi;
            p.h = h;
            dynamics::BodyState s0;
            s0.w = w0;
            s0.v = v0;
            s0.gamma = gamma;
            dynamics::Method meth = dynamics::Method::Rk4;
            if (method == "midpoint") {
                meth = dynamics::Method::Midpoint;
            } else if (method != "rk4") {
                throw Error(ErrorKind::ValidationError, "unknown method '" + method + "'");
            }
            return trajectory_arrays(dynamics::integrate(parse_system(system), p, s0, dt, steps, meth));
        },
        py::arg("system"), py::arg("i"), py::arg("w0"), py::arg("dt"), py::arg("steps"), py::kw_only(),
        py::arg("mass") = Vec3(Vec3::Ones()), py::arg("v0") = Vec3(Vec3::Zero()), py::arg("mgl") = 0.0,
        py::arg("chi") = py::none(), py::arg("gamma") = py::none(), py::arg("h") = 0.0,
        py::arg("method") = "rk4",
        "Fixed-step integration. Returns a dict of arrays t, v, w, quaternion, position.");
    m.def("euler_rhs", &dynamics::euler_rhs, py::arg("inertia"), py::arg("w"),
          py::arg("torque") = Vec3(Vec3::Zero()));

    m.def(
        "jolt_report",
        [](double dt, const Eigen::MatrixXd& v, const Eigen::MatrixXd& w, const Vec3& mass, const Vec3& inertia,
           std::optional<std::pair<double, double>> thresholds) {
            if (v.cols() != 3 || w.cols() != 3 || v.rows() != w.rows()) {
                throw Error(ErrorKind::ValidationError, "v and w must be (n, 3) arrays of equal length");
            }
            dynamics::Trajectory traj;
            traj.dt = dt;
            for (Eigen::Index k = 0; k < v.rows(); ++k) {
                dynamics::Sample s;
                s.t = static_cast<double>(k) * dt;
                s.state.v = v.row(k).transpose();
                s.state.w = w.row(k).transpose();
                traj.samples.push_back(s);
            }
            dynamics::BodyParams p;
            p.m = mass;
            p.i = inertia;
            p.validate();
            std::optional<jolt::Thresholds> th;
            if (thresholds) th = jolt::Thresholds{thresholds->first, thresholds->second};
            const auto rep = jolt::jolt_report(traj, p, th);
            const auto n = static_cast<Eigen::Index>(rep.samples.size());
            Eigen::MatrixXd f_dot(n, 3), t_dot(n, 3);
            for (Eigen::Index k = 0; k < n; ++k) {
                f_dot.row(k) = rep.samples[static_cast<std::size_t>(k)].f_dot.transpose();
                t_dot.row(k) = rep.samples[static_cast<std::size_t>(k)].t_dot.transpose();
            }
            py::dict d;
            d["f_dot"] = f_dot;
            d["t_dot"] = t_dot;
            d["peak_f_norm"] = rep.peak_f_norm;
            d["peak_f_time"] = rep.peak_f_time;
            d["peak_t_norm"] = rep.peak_t_norm;
            d["peak_t_time"] = rep.peak_t_time;
            d["f_exceedances"] = intervals(rep.f_exceedances);
            d["t_exceedances"] = intervals(rep.t_exceedances);
            return d;
        },
        py::arg("dt"), py::arg("v"), py::arg("w"), py::arg("mass"), py::arg("inertia"),
        py::arg("thresholds") = py::none(),
        "SE(3) jolt from uniformly sampled body velocities, rows starting at t = 0.");

    // Symplectic
    m.def("symplectic_form", &symplectic::symplectic_form, py::arg("n"));
    m.def(
        "is_symplectic",
        [](const MatX& a, double tol) {
            const auto c = symplectic::is_symplectic(a, tol);
            return py::make_tuple(c.ok, c.residual);
        },
        py::arg("a"), py::arg("tol") = 1e-10, "Returns (ok, residual).");
    m.def("quadratic_monodromy", &symplectic::quadratic_monodromy, py::arg("hessian"), py::arg("t"), py::arg("dt"));

    // Scenarios
    m.def("canonical_scenario", [](const std::string& text) { return cli::serialize_scenario(cli::parse_scenario(text)); },
          py::arg("text"));
    m.def("scenario_digest", [](const std::string& text) { return cli::scenario_digest(cli::parse_scenario(text)); },
          py::arg("text"));
    m.def(
        "run_scenario",
        [](const std::string& text, const std::string& out_dir) {
            const auto sc = cli::parse_scenario(text);
            py::gil_scoped_release release;
            return cli::manifest_json(cli::run_scenario(sc, out_dir));
        },
        py::arg("text"), py::arg("out_dir"), "Runs a scenario and returns the manifest JSON text.");
    m.def(
        "simulate",
        [](const std::string& text) {
            const auto sc = cli::parse_scenario(text);
            std::string csv;
            const auto manifest = cli::simulate(sc, &csv);
            py::dict drift;
            for (const auto& d : manifest.conservation) drift[py::str(d.quantity)] = d.max_abs_drift;
            return py::make_tuple(csv, drift);
        },
        py::arg("text"), "Returns (csv_text, {quantity: max_abs_drift}) without touching the filesystem.");
}
