#include "liemech/algebra.hpp"

#include "liemech/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace liemech::algebra {

std::string Label::str() const { return std::string(1, static_cast<char>(family)) + std::to_string(rank); }

std::optional<Family> family_from_char(char c) {
    switch (c) {
        case 'A': case 'a': return Family::A;
        case 'B': case 'b': return Family::B;
        case 'C': case 'c': return Family::C;
        case 'D': case 'd': return Family::D;
        case 'E': case 'e': return Family::E;
        case 'F': case 'f': return Family::F;
        case 'G': case 'g': return Family::G;
        default: return std::nullopt;
    }
}

long dot4(const DoubledRoot& a, const DoubledRoot& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * b[i];
    return s;
}

std::string format_root(const DoubledRoot& r) {
    std::string out = "(";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += ",";
        if (r[i] % 2 == 0) {
            out += std::to_string(r[i] / 2);
        } else {
            out += std::to_string(r[i]) + "/2";
        }
    }
    return out + ")";
}

RootSystem RootSystem::from_coordinates(const std::vector<std::vector<double>>& vectors) {
    RootSystem rs;
    for (const auto& v : vectors) {
        if (rs.ambient_dim == 0) rs.ambient_dim = static_cast<int>(v.size());
        if (static_cast<int>(v.size()) != rs.ambient_dim) {
            throw Error(ErrorKind::InvalidArgument, "root vectors have inconsistent dimensions");
        }
        DoubledRoot r(v.size());
        bool nonzero = false;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double twice = 2.0 * v[i];
            const double rounded = std::round(twice);
            if (std::abs(twice - rounded) > 1e-12) {
                throw Error(ErrorKind::InvalidArgument, "root coordinates must be half-integers");
            }
            r[i] = static_cast<int>(rounded);
            nonzero = nonzero || r[i] != 0;
        }
        if (!nonzero) throw Error(ErrorKind::InvalidArgument, "roots must be non-zero");
        rs.roots.push_back(std::move(r));
    }
    return rs;
}

VecX RootSystem::coordinates(std::size_t i) const {
    VecX v(ambient_dim);
    for (int k = 0; k < ambient_dim; ++k) v[k] = 0.5 * roots[i][k];
    return v;
}

int RootSystem::rank() const {
    if (roots.empty()) return 0;
    MatX m(ambient_dim, static_cast<Eigen::Index>(roots.size()));
    for (std::size_t i = 0; i < roots.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = coordinates(i);
    return static_cast<int>(Eigen::FullPivLU<MatX>(m).rank());
}

// -----------------------------------------------------------------------------
// Construction
// -----------------------------------------------------------------------------

namespace {

DoubledRoot unit(int dim, int i, int scale) {
    DoubledRoot r(dim, 0);
    r[i] = scale;
    return r;
}

// +-e_i +- e_j for i < j, doubled.
void add_pairs(std::vector<DoubledRoot>& out, int dim) {
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            for (int si : {2, -2}) {
                for (int sj : {2, -2}) {
                    DoubledRoot r(dim, 0);
                    r[i] = si;
                    r[j] = sj;
                    out.push_back(r);
                }
            }
        }
    }
}

void add_units(std::vector<DoubledRoot>& out, int dim, int scale) {
    for (int i = 0; i < dim; ++i) {
        out.push_back(unit(dim, i, scale));
        out.push_back(unit(dim, i, -scale));
    }
}

// All (+-1/2, ..., +-1/2); with even_minus, only an even number of minus signs.
void add_half_vectors(std::vector<DoubledRoot>& out, int dim, bool even_minus) {
    for (int mask = 0; mask < (1 << dim); ++mask) {
        int minus = 0;
        DoubledRoot r(dim, 1);
        for (int i = 0; i < dim; ++i) {
            if (mask & (1 << i)) {
                r[i] = -1;
                ++minus;
            }
        }
        if (even_minus && minus % 2 != 0) continue;
        out.push_back(r);
    }
}

std::vector<DoubledRoot> e8_roots() {
    std::vector<DoubledRoot> roots;
    add_pairs(roots, 8);
    add_half_vectors(roots, 8, true);
    return roots;
}

std::vector<DoubledRoot> orthogonal_to(const std::vector<DoubledRoot>& roots, const DoubledRoot& a) {
    std::vector<DoubledRoot> out;
    for (const auto& r : roots) {
        if (dot4(r, a) == 0) out.push_back(r);
    }
    return out;
}

void require_rank(bool ok, Family f, int rank) {
    if (!ok) {
        throw Error(ErrorKind::InvalidRank, "no root system " + Label{f, rank}.str() +
                                                " (A: n>=1, B: n>=2, C: n>=3, D: n>=4, E: 6-8, F: 4, G: 2)");
    }
}

}  // namespace

RootSystem build_root_system(Family family, int rank) {
    RootSystem rs;
    rs.label = Label{family, rank};
    switch (family) {
        case Family::A: {
            require_rank(rank >= 1, family, rank);
            rs.ambient_dim = rank + 1;
            for (int i = 0; i <= rank; ++i) {
                for (int j = 0; j <= rank; ++j) {
                    if (i == j) continue;
                    DoubledRoot r(rank + 1, 0);
                    r[i] = 2;
                    r[j] = -2;
                    rs.roots.push_back(r);
                }
            }
            break;
        }
        case Family::B:
            require_rank(rank >= 2, family, rank);
            rs.ambient_dim = rank;
            add_units(rs.roots, rank, 2);
            add_pairs(rs.roots, rank);
            break;
        case Family::C:
            require_rank(rank >= 3, family, rank);
            rs.ambient_dim = rank;
            add_units(rs.roots, rank, 4);
            add_pairs(rs.roots, rank);
            break;
        case Family::D:
            require_rank(rank >= 4, family, rank);
            rs.ambient_dim = rank;
            add_pairs(rs.roots, rank);
            break;
        case Family::E: {
            require_rank(rank >= 6 && rank <= 8, family, rank);
            rs.ambient_dim = 8;
            std::vector<DoubledRoot> roots = e8_roots();
            std::sort(roots.begin(), roots.end());
            if (rank <= 7) {
                const DoubledRoot alpha = roots.front();
                if (rank == 6) {
                    DoubledRoot beta;
                    for (const auto& r : roots) {
                        const long d = dot4(r, alpha);
                        if (d != 0 && std::abs(d) != dot4(alpha, alpha)) {
                            beta = r;
                            break;
                        }
                    }
                    roots = orthogonal_to(orthogonal_to(roots, alpha), beta);
                } else {
                    roots = orthogonal_to(roots, alpha);
                }
            }
            rs.roots = std::move(roots);
            break;
        }
        case Family::F:
            require_rank(rank == 4, family, rank);
            rs.ambient_dim = 4;
            add_units(rs.roots, 4, 2);
            add_pairs(rs.roots, 4);
            add_half_vectors(rs.roots, 4, false);
            break;
        case Family::G:
            require_rank(rank == 2, family, rank);
            // Hexagram in the plane x + y + z = 0: short e_i - e_j, long 2e_i - e_j - e_k.
            rs.ambient_dim = 3;
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    DoubledRoot s(3, 0);
                    s[i] = 2;
                    s[j] = -2;
                    rs.roots.push_back(s);
                }
                DoubledRoot l(3, -2);
                l[i] = 4;
                rs.roots.push_back(l);
                for (auto& x : l) x = -x;
                rs.roots.push_back(l);
            }
            break;
    }
    std::sort(rs.roots.begin(), rs.roots.end());
    return rs;
}

// -----------------------------------------------------------------------------
// Axioms and angles
// -----------------------------------------------------------------------------

AxiomReport verify_root_system(const RootSystem& rs) {
    AxiomReport rep;
    std::vector<VecX> v;
    v.reserve(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) v.push_back(rs.coordinates(i));

    const auto distance_to_set = [&](const VecX& x) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : v) best = std::min(best, (r - x).norm());
        return best;
    };

    for (std::size_t a = 0; a < v.size(); ++a) {
        const double aa = v[a].squaredNorm();
        for (std::size_t b = 0; b < v.size(); ++b) {
            const double ab = v[a].dot(v[b]);
            const double bb = v[b].squaredNorm();

            // Parallel iff Cauchy-Schwarz is tight; then only +-alpha is allowed.
            if (std::abs(ab * ab - aa * bb) <= 1e-9 * aa * bb) {
                const double off = std::min((v[b] - v[a]).norm(), (v[b] + v[a]).norm());
                if (off > 1e-9) {
                    rep.multiples = false;
                    rep.worst_violation = std::max(rep.worst_violation, off);
                }
            }

            const double ratio = 2.0 * ab / aa;
            const double frac = std::abs(ratio - std::round(ratio));
            if (frac > 1e-9) {
                rep.integrality = false;
                rep.worst_violation = std::max(rep.worst_violation, frac);
            }

            const VecX reflected = v[b] - ratio * v[a];
            const double miss = distance_to_set(reflected);
            if (miss > 1e-9) {
                rep.reflections = false;
                rep.worst_violation = std::max(rep.worst_violation, miss);
            }
        }
    }
    return rep;
}

std::vector<double> root_angles(const RootSystem& rs) {
    std::vector<double> angles;
    for (std::size_t a = 0; a < rs.size(); ++a) {
        for (std::size_t b = 0; b < rs.size(); ++b) {
            const long ab = dot4(rs.roots[a], rs.roots[b]);
            const long cross_sq = dot4(rs.roots[a], rs.roots[a]) * dot4(rs.roots[b], rs.roots[b]) - ab * ab;
            const double rad = std::atan2(std::sqrt(static_cast<double>(cross_sq)), static_cast<double>(ab));
            const double deg = rad * 180.0 / std::numbers::pi;
            const bool seen = std::any_of(angles.begin(), angles.end(),
                                          [&](double x) { return std::abs(x - deg) < 1e-9; });
            if (!seen) angles.push_back(deg);
        }
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

// -----------------------------------------------------------------------------
// Bases and Cartan matrices
// -----------------------------------------------------------------------------

namespace {

DoubledRoot operator-(const DoubledRoot& a, const DoubledRoot& b) {
    DoubledRoot r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// Generic functional with coefficients pi, pi^2, ..., so no root is on its kernel.
double generic_functional(const DoubledRoot& r) {
    double f = 0.0;
    double w = std::numbers::pi;
    for (int x : r) {
        f += w * x;
        w *= std::numbers::pi;
    }
    return f;
}

std::vector<std::vector<int>> adjacency(const std::vector<DoubledRoot>& base) {
    const auto n = base.size();
    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dot4(base[i], base[j]) != 0) adj[i].push_back(static_cast<int>(j));
        }
    }
    return adj;
}

}  // namespace

std::vector<DoubledRoot> simple_roots(const RootSystem& rs) {
    std::vector<DoubledRoot> positive;
    for (const auto& r : rs.roots) {
        if (generic_functional(r) > 0.0) positive.push_back(r);
    }
    const std::set<DoubledRoot> positive_set(positive.begin(), positive.end());

    std::vector<DoubledRoot> simple;
    for (const auto& g : positive) {
        bool decomposable = false;
        for (const auto& a : positive) {
            if (a != g && positive_set.count(g - a)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simple.push_back(g);
    }

    // Connectivity of the non-orthogonality graph decides irreducibility.
    const auto adj = adjacency(simple);
    const auto n = simple.size();
    if (n == 0) throw Error(ErrorKind::NotIrreducible, "empty root system has no base");

    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (adj[i].size() < adj[start].size() ||
            (adj[i].size() == adj[start].size() && simple[i] < simple[start])) {
            start = i;
        }
    }
    std::vector<int> order;
    std::vector<bool> seen(n, false);
    order.push_back(static_cast<int>(start));
    seen[start] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
        std::vector<int> next = adj[order[head]];
        std::sort(next.begin(), next.end(), [&](int a, int b) { return simple[a] < simple[b]; });
        for (int j : next) {
            if (!seen[j]) {
                seen[j] = true;
                order.push_back(j);
            }
        }
    }
    if (order.size() != n) {
        throw Error(ErrorKind::NotIrreducible,
                    "root system decomposes: base graph has " + std::to_string(n - order.size()) +
                        " node(s) outside the first component");
    }

    std::vector<DoubledRoot> base;
    base.reserve(n);
    for (int i : order) base.push_back(simple[i]);
    return base;
}

MatX base_coefficients(const RootSystem& rs, const std::vector<DoubledRoot>& base) {
    MatX b(rs.ambient_dim, static_cast<Eigen::Index>(base.size()));
    for (std::size_t j = 0; j < base.size(); ++j) {
        for (int k = 0; k < rs.ambient_dim; ++k) b(k, static_cast<Eigen::Index>(j)) = 0.5 * base[j][k];
    }
    const auto solver = b.colPivHouseholderQr();
    MatX coeffs(static_cast<Eigen::Index>(rs.size()), static_cast<Eigen::Index>(base.size()));
    for (std::size_t i = 0; i < rs.size(); ++i) {
        coeffs.row(static_cast<Eigen::Index>(i)) = solver.solve(rs.coordinates(i)).transpose();
    }
    return coeffs;
}

CartanMatrix cartan_matrix(const std::vector<DoubledRoot>& base) {
    const auto n = static_cast<Eigen::Index>(base.size());
    CartanMatrix cm{Eigen::MatrixXi::Zero(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double ii = static_cast<double>(dot4(base[i], base[i]));
        for (Eigen::Index j = 0; j < n; ++j) {
            const double value = 2.0 * static_cast<double>(dot4(base[i], base[j])) / ii;
            const double rounded = std::round(value);
            if (std::abs(value - rounded) >= 1e-9) {
                throw Error(ErrorKind::NonIntegerEntry, "Cartan entry (" + std::to_string(i) + "," +
                                                            std::to_string(j) +
                                                            ") = " + std::to_string(value));
            }
            cm.a(i, j) = static_cast<int>(rounded);
        }
    }
    return cm;
}

}  // namespace liemech::algebra
