#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace liemech::algebra {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// -----------------------------------------------------------------------------
// Lie algebras given by structure constants
// -----------------------------------------------------------------------------

/// Real Lie algebra of dimension dim with [e_i, e_j] = sum_k c(i, j, k) e_k.
class StructureAlgebra {
public:
    /// Checks antisymmetry c(i,j,k) = -c(j,i,k) to 1e-12; does not check Jacobi.
    StructureAlgebra(int dim, std::vector<double> constants);

    int dim() const { return dim_; }
    double c(int i, int j, int k) const { return c_[index(i, j, k)]; }

    VecX bracket(const VecX& x, const VecX& y) const;
    /// Matrix of ad_x = [x, .] in the basis.
    MatX ad(const VecX& x) const;

private:
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
    }

    int dim_;
    std::vector<double> c_;
};

StructureAlgebra so3_algebra();
StructureAlgebra se2_algebra();
StructureAlgebra se3_algebra();
StructureAlgebra abelian_algebra(int dim);

/// Largest norm of the cyclic Jacobi sum over all basis triples.
double jacobi_defect(const StructureAlgebra& alg);
/// B(x, y) = Tr(ad_x ad_y)
double killing_form(const StructureAlgebra& alg, const VecX& x, const VecX& y);
MatX killing_gram(const StructureAlgebra& alg);
bool is_semisimple(const StructureAlgebra& alg);

// -----------------------------------------------------------------------------
// Root systems
// -----------------------------------------------------------------------------

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct Label {
    Family family;
    int rank;

    std::string str() const;
    friend bool operator==(const Label&, const Label&) = default;
};

std::optional<Family> family_from_char(char c);

/// A root stored as twice its coordinates; every constructed root has
/// half-integer coordinates, so this keeps all inner products exact.
using DoubledRoot = std::vector<int>;

struct RootSystem {
    int ambient_dim = 0;
    std::vector<DoubledRoot> roots;
    std::optional<Label> label;

    /// From real coordinates; each must be a half-integer (to 1e-12).
    static RootSystem from_coordinates(const std::vector<std::vector<double>>& vectors);

    std::size_t size() const { return roots.size(); }
    VecX coordinates(std::size_t i) const;
    /// Dimension of the span of the roots.
    int rank() const;
};

/// 4 <a, b> in exact integer arithmetic.
long dot4(const DoubledRoot& a, const DoubledRoot& b);

RootSystem build_root_system(Family family, int rank);

struct AxiomReport {
    bool multiples = true;    // only +-alpha are multiples of alpha
    bool reflections = true;  // s_alpha(Phi) = Phi
    bool integrality = true;  // 2<b,a>/<a,a> in Z
    double worst_violation = 0.0;

    bool ok() const { return multiples && reflections && integrality; }
};

AxiomReport verify_root_system(const RootSystem& rs);

/// Distinct pairwise angles in degrees, ascending.
std::vector<double> root_angles(const RootSystem& rs);

inline constexpr double kAllowedRootAngles[] = {0, 30, 45, 60, 90, 120, 135, 150, 180};

/// Ordered base of simple roots, breadth-first from the lowest-degree node.
std::vector<DoubledRoot> simple_roots(const RootSystem& rs);

/// Coefficients of every root in the given base (rows follow rs.roots).
MatX base_coefficients(const RootSystem& rs, const std::vector<DoubledRoot>& base);

struct CartanMatrix {
    Eigen::MatrixXi a;  // a(i, j) = 2 <alpha_i, alpha_j> / |alpha_i|^2

    int size() const { return static_cast<int>(a.rows()); }
};

CartanMatrix cartan_matrix(const std::vector<DoubledRoot>& base);

struct DynkinEdge {
    int i = 0;
    int j = 0;
    int multiplicity = 1;
    // Node the arrow starts from (longer root); only set on multiple edges.
    std::optional<int> arrow_from;

    friend bool operator==(const DynkinEdge&, const DynkinEdge&) = default;
};

struct DynkinDiagram {
    std::vector<std::string> nodes;
    std::vector<DynkinEdge> edges;

    int size() const { return static_cast<int>(nodes.size()); }
    /// One line per node, one line per edge "i - j xN [arrow i>j]".
    std::string to_text() const;
    DynkinDiagram without_node(int node) const;
};

/// Index of the first violated admissibility rule (2: loop, 3: more than
/// three lines at a node, 5: triple line in a component with != 2 nodes).
std::optional<int> admissibility_violation(const DynkinDiagram& d);

/// Throws Inadmissible when the resulting diagram breaks an admissibility rule.
DynkinDiagram dynkin_diagram(const CartanMatrix& cm, const std::vector<DoubledRoot>& base);

/// Family label per connected component, ordered by smallest node index.
std::vector<Label> classify_diagram(const DynkinDiagram& d);

std::string format_root(const DoubledRoot& r);

}  // namespace liemech::algebra
