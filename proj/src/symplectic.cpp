#include "liemech/symplectic.hpp"

#include "liemech/dynamics.hpp"
#include "liemech/error.hpp"

#include <cmath>

namespace liemech::symplectic {

namespace {

int half_dimension(const MatX& a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::OddDimension, "matrix is not square (" + std::to_string(a.rows()) + "x" +
                                                 std::to_string(a.cols()) + ")");
    }
    if (a.rows() == 0 || a.rows() % 2 != 0) {
        throw Error(ErrorKind::OddDimension, "matrix dimension " + std::to_string(a.rows()) + " is not even");
    }
    return static_cast<int>(a.rows() / 2);
}

}  // namespace

MatX symplectic_form(int n) {
    MatX j = MatX::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = MatX::Identity(n, n);
    j.bottomLeftCorner(n, n) = -MatX::Identity(n, n);
    return j;
}

Check is_symplectic(const MatX& a, double tol) {
    const MatX j = symplectic_form(half_dimension(a));
    const double r = (a.transpose() * j * a - j).norm();
    return {r <= tol, r};
}

double sp_algebra_residual(const MatX& a) {
    const MatX j = symplectic_form(half_dimension(a));
    return (a.transpose() * j + j * a).norm();
}

VecX PhasePoint::packed() const {
    VecX z(q.size() + p.size());
    z << q, p;
    return z;
}

PhasePoint PhasePoint::from_packed(const VecX& z) {
    if (z.size() % 2 != 0) throw Error(ErrorKind::OddDimension, "phase vector has odd length");
    const auto n = z.size() / 2;
    return {z.head(n), z.tail(n)};
}

VecX hamiltonian_rhs(const Gradient& grad_h, const PhasePoint& z) {
    const VecX g = grad_h(z);
    if (g.size() != 2 * z.dof()) {
        throw Error(ErrorKind::InvalidArgument, "gradient has the wrong length");
    }
    return symplectic_form(z.dof()) * g;
}

Potential free_potential() {
    return {[](const VecX&) { return 0.0; }, [](const VecX& q) -> VecX { return VecX::Zero(q.size()); }};
}

Potential harmonic_potential(double k) {
    return {[k](const VecX& q) { return 0.5 * k * q.squaredNorm(); }, [k](const VecX& q) -> VecX { return k * q; }};
}

Potential kepler_potential(double k) {
    return {[k](const VecX& q) { return -k / q.norm(); },
            [k](const VecX& q) -> VecX {
                const double r = q.norm();
                return k * q / (r * r * r);
            }};
}

ParticleHamiltonian::ParticleHamiltonian(double mass, Potential potential)
    : mass_(mass), potential_(std::move(potential)) {
    if (!(mass > 0.0)) throw Error(ErrorKind::ValidationError, "particle mass must be positive");
}

double ParticleHamiltonian::value(const PhasePoint& z) const {
    return 0.5 * z.p.squaredNorm() / mass_ + potential_.value(z.q);
}

VecX ParticleHamiltonian::gradient(const PhasePoint& z) const {
    VecX g(2 * z.dof());
    g << potential_.gradient(z.q), z.p / mass_;
    return g;
}

Gradient ParticleHamiltonian::gradient_fn() const {
    return [self = *this](const PhasePoint& z) { return self.gradient(z); };
}

std::vector<PhasePoint> hamiltonian_flow(const Gradient& grad_h, const PhasePoint& z0, double dt, int steps) {
    const auto f = [&](double, const VecX& z) { return hamiltonian_rhs(grad_h, PhasePoint::from_packed(z)); };
    std::vector<PhasePoint> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    VecX z = z0.packed();
    out.push_back(z0);
    for (int k = 0; k < steps; ++k) {
        z = dynamics::rk4_step(f, k * dt, z, dt);
        if (!z.allFinite()) {
            throw Error(ErrorKind::NonFiniteState, "phase point became non-finite at step " + std::to_string(k + 1));
        }
        out.push_back(PhasePoint::from_packed(z));
    }
    return out;
}

MatX jacobian_fd(const PhaseMap& f, const VecX& z, double step) {
    const VecX f0 = f(z);
    MatX jac(f0.size(), z.size());
    for (Eigen::Index c = 0; c < z.size(); ++c) {
        VecX plus = z;
        VecX minus = z;
        plus[c] += step;
        minus[c] -= step;
        jac.col(c) = (f(plus) - f(minus)) / (2.0 * step);
    }
    return jac;
}

Check canonical_check(const PhaseMap& f, const PhasePoint& z, double tol) {
    return is_symplectic(jacobian_fd(f, z.packed()), tol);
}

MatX quadratic_monodromy(const MatX& hessian, double t, double dt) {
    const int n = half_dimension(hessian);
    const MatX generator = symplectic_form(n) * hessian;
    const auto f = [&](double, const MatX& phi) -> MatX { return generator * phi; };
    const int steps = static_cast<int>(std::llround(t / dt));
    MatX phi = MatX::Identity(2 * n, 2 * n);
    for (int k = 0; k < steps; ++k) phi = dynamics::rk4_step(f, k * dt, phi, dt);
    return phi;
}

}  // namespace liemech::symplectic
