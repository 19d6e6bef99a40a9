#include "liemech/algebra.hpp"

#include "liemech/error.hpp"
#include "liemech/groups.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace liemech::algebra {

StructureAlgebra::StructureAlgebra(int dim, std::vector<double> constants)
    : dim_(dim), c_(std::move(constants)) {
    if (dim < 1) {
        throw Error(ErrorKind::InvalidArgument, "algebra dimension must be positive");
    }
    const auto expected = static_cast<std::size_t>(dim) * dim * dim;
    if (c_.size() != expected) {
        throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(expected) +
                                                    " structure constants, got " +
                                                    std::to_string(c_.size()));
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            for (int k = 0; k < dim; ++k) {
                if (std::abs(c(i, j, k) + c(j, i, k)) > 1e-12) {
                    throw Error(ErrorKind::InvalidArgument,
                                "structure constants are not antisymmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + "," + std::to_string(k) + ")");
                }
            }
        }
    }
}

VecX StructureAlgebra::bracket(const VecX& x, const VecX& y) const {
    VecX out = VecX::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < dim_; ++j) {
            const double xy = x[i] * y[j];
            if (xy == 0.0) continue;
            for (int k = 0; k < dim_; ++k) out[k] += xy * c(i, j, k);
        }
    }
    return out;
}

MatX StructureAlgebra::ad(const VecX& x) const {
    MatX m = MatX::Zero(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
        for (int k = 0; k < dim_; ++k) {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i) s += x[i] * c(i, j, k);
            m(k, j) = s;
        }
    }
    return m;
}

namespace {

StructureAlgebra from_bracket(int dim, const std::function<VecX(const VecX&, const VecX&)>& bracket) {
    std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const VecX b = bracket(VecX::Unit(dim, i), VecX::Unit(dim, j));
            for (int k = 0; k < dim; ++k) c[(static_cast<std::size_t>(i) * dim + j) * dim + k] = b[k];
        }
    }
    return StructureAlgebra(dim, std::move(c));
}

}  // namespace

StructureAlgebra so3_algebra() {
    return from_bracket(3, [](const VecX& x, const VecX& y) -> VecX {
        return groups::ad_so3(x.head<3>(), y.head<3>());
    });
}

// Basis (xi, v1, v2).
StructureAlgebra se2_algebra() {
    return from_bracket(3, [](const VecX& x, const VecX& y) -> VecX {
        const auto b = groups::se2_bracket({x[0], x.tail<2>()}, {y[0], y.tail<2>()});
        VecX out(3);
        out << b.xi, b.v;
        return out;
    });
}

// Basis (w1, w2, w3, v1, v2, v3).
StructureAlgebra se3_algebra() {
    return from_bracket(6, [](const VecX& x, const VecX& y) -> VecX {
        const auto b = groups::se3_bracket({x.head<3>(), x.tail<3>()}, {y.head<3>(), y.tail<3>()});
        VecX out(6);
        out << b.w, b.v;
        return out;
    });
}

StructureAlgebra abelian_algebra(int dim) {
    return StructureAlgebra(dim, std::vector<double>(static_cast<std::size_t>(dim) * dim * dim, 0.0));
}

double jacobi_defect(const StructureAlgebra& alg) {
    const int n = alg.dim();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const VecX u = VecX::Unit(n, i);
        for (int j = 0; j < n; ++j) {
            const VecX v = VecX::Unit(n, j);
            for (int k = 0; k < n; ++k) {
                const VecX w = VecX::Unit(n, k);
                const VecX sum = alg.bracket(u, alg.bracket(v, w)) + alg.bracket(w, alg.bracket(u, v)) +
                                 alg.bracket(v, alg.bracket(w, u));
                worst = std::max(worst, sum.norm());
            }
        }
    }
    return worst;
}

double killing_form(const StructureAlgebra& alg, const VecX& x, const VecX& y) {
    return (alg.ad(x) * alg.ad(y)).trace();
}

MatX killing_gram(const StructureAlgebra& alg) {
    const int n = alg.dim();
    std::vector<MatX> ads;
    ads.reserve(n);
    for (int i = 0; i < n; ++i) ads.push_back(alg.ad(VecX::Unit(n, i)));
    MatX g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g(i, j) = (ads[i] * ads[j]).trace();
    }
    return g;
}

bool is_semisimple(const StructureAlgebra& alg) {
    return std::abs(killing_gram(alg).determinant()) > 1e-9;
}

}  // namespace liemech::algebra
