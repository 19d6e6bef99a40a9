#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace liemech::symplectic {

using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

/// J = [[0, I], [-I, 0]] of size 2n.
MatX symplectic_form(int n);

struct Check {
    bool ok = false;
    double residual = 0.0;
};

/// residual = |A^T J A - J|_F; throws OddDimension for non-square or odd sizes.
Check is_symplectic(const MatX& a, double tol);

/// |A^T J + J A|_F, zero exactly on sp(2n).
double sp_algebra_residual(const MatX& a);

struct PhasePoint {
    VecX q;
    VecX p;

    int dof() const { return static_cast<int>(q.size()); }
    VecX packed() const;
    static PhasePoint from_packed(const VecX& z);
};

using Gradient = std::function<VecX(const PhasePoint&)>;

/// z' = J grad H(z), i.e. q' = dH/dp and p' = -dH/dq.
VecX hamiltonian_rhs(const Gradient& grad_h, const PhasePoint& z);

struct Potential {
    std::function<double(const VecX&)> value;
    std::function<VecX(const VecX&)> gradient;
};

Potential free_potential();
/// V = k/2 |q|^2
Potential harmonic_potential(double k);
/// V = -k/|q|
Potential kepler_potential(double k);

/// H = |p|^2 / 2m + V(q)
class ParticleHamiltonian {
public:
    ParticleHamiltonian(double mass, Potential potential);

    double mass() const { return mass_; }
    double value(const PhasePoint& z) const;
    VecX gradient(const PhasePoint& z) const;
    Gradient gradient_fn() const;

private:
    double mass_;
    Potential potential_;
};

/// Fixed-step flow of z' = J grad H(z) using the shared RK4 step; returns steps + 1 points.
std::vector<PhasePoint> hamiltonian_flow(const Gradient& grad_h, const PhasePoint& z0, double dt, int steps);

using PhaseMap = std::function<VecX(const VecX&)>;

/// Central-difference Jacobian, per-component step.
MatX jacobian_fd(const PhaseMap& f, const VecX& z, double step = 1e-6);

/// Symplecticity of the finite-difference Jacobian of f at z.
Check canonical_check(const PhaseMap& f, const PhasePoint& z, double tol);

/// Fundamental matrix of z' = J S z over [0, t], integrated as a matrix ODE.
MatX quadratic_monodromy(const MatX& hessian, double t, double dt);

}  // namespace liemech::symplectic
