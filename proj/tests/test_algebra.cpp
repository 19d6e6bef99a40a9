#include "liemech/algebra.hpp"
#include "liemech/error.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace liemech;
using namespace liemech::algebra;

namespace {

struct Case {
    Family family;
    int rank;
    std::size_t roots;
};

// Root counts: n^2 + n for A, 2n^2 for B and C, 2n(n-1) for D, and the exceptional sizes.
const Case kCases[] = {
    {Family::A, 1, 2},  {Family::A, 2, 6},   {Family::A, 3, 12},  {Family::A, 4, 20}, {Family::B, 2, 8},
    {Family::B, 3, 18}, {Family::B, 4, 32},  {Family::C, 3, 18},  {Family::C, 4, 32}, {Family::D, 4, 24},
    {Family::E, 6, 72}, {Family::E, 7, 126}, {Family::E, 8, 240}, {Family::F, 4, 48}, {Family::G, 2, 12},
};

VecX random_vector(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1, 1);
    VecX x(n);
    for (int i = 0; i < n; ++i) x[i] = u(rng);
    return x;
}

}  // namespace

TEST_CASE("structure constants satisfy Jacobi") {
    for (const auto& alg : {so3_algebra(), se2_algebra(), se3_algebra(), abelian_algebra(4)}) {
        CHECK(jacobi_defect(alg) < 1e-14);
    }
}

TEST_CASE("structure algebra bracket is bilinear and antisymmetric") {
    const auto alg = se3_algebra();
    std::mt19937_64 rng(3);
    const VecX x = random_vector(rng, 6);
    const VecX y = random_vector(rng, 6);
    CHECK((alg.bracket(x, y) + alg.bracket(y, x)).norm() < 1e-15);
    CHECK((alg.ad(x) * y - alg.bracket(x, y)).norm() < 1e-15);
    CHECK_THROWS_AS(StructureAlgebra(2, {0, 1, 0, 0, 0, 0, 0, 0}), Error);
}

TEST_CASE("Killing form and semisimplicity") {
    const auto so3 = so3_algebra();
    // so(3): B(x, y) = -2 x.y
    const MatX g = killing_gram(so3);
    CHECK((g + 2.0 * MatX::Identity(3, 3)).norm() < 1e-14);
    CHECK(is_semisimple(so3));
    CHECK_FALSE(is_semisimple(se3_algebra()));
    CHECK_FALSE(is_semisimple(se2_algebra()));
    CHECK_FALSE(is_semisimple(abelian_algebra(3)));
}

TEST_CASE("root counts") {
    for (const auto& c : kCases) {
        const std::string label = Label{c.family, c.rank}.str();
        CAPTURE(label);
        const auto rs = build_root_system(c.family, c.rank);
        CHECK(rs.size() == c.roots);
        CHECK(rs.rank() == c.rank);
        CHECK(verify_root_system(rs).ok());
    }
}

TEST_CASE("invalid ranks") {
    CHECK_THROWS_AS(build_root_system(Family::A, 0), Error);
    CHECK_THROWS_AS(build_root_system(Family::B, 1), Error);
    CHECK_THROWS_AS(build_root_system(Family::D, 3), Error);
    CHECK_THROWS_AS(build_root_system(Family::E, 5), Error);
    CHECK_THROWS_AS(build_root_system(Family::F, 3), Error);
    CHECK_THROWS_AS(build_root_system(Family::G, 3), Error);
    try {
        build_root_system(Family::E, 9);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidRank);
    }
}

TEST_CASE("root angles lie in the allowed set") {
    for (const auto& c : kCases) {
        const auto angles = root_angles(build_root_system(c.family, c.rank));
        for (double a : angles) {
            double best = 1e9;
            for (double allowed : kAllowedRootAngles) best = std::min(best, std::abs(a - allowed));
            CHECK(best < 1e-9);
        }
    }
    // G2 is the only system here with 30 and 150 degrees.
    const auto g2 = root_angles(build_root_system(Family::G, 2));
    CHECK(std::count_if(g2.begin(), g2.end(), [](double a) { return std::abs(a - 30) < 1e-9; }) == 1);
}

TEST_CASE("axiom checker rejects non-root systems") {
    // {e1, 2 e1, -e1, -2 e1} breaks the multiples axiom.
    const auto rs = RootSystem::from_coordinates({{1, 0}, {2, 0}, {-1, 0}, {-2, 0}});
    const auto rep = verify_root_system(rs);
    CHECK_FALSE(rep.multiples);
    CHECK_FALSE(rep.ok());
    // A1 x A1 at a skew angle is not closed under reflections.
    const auto skew = RootSystem::from_coordinates({{1, 0}, {-1, 0}, {0.5, 1}, {-0.5, -1}});
    CHECK_FALSE(verify_root_system(skew).ok());
    CHECK_THROWS_AS(RootSystem::from_coordinates({{0.3, 0}}), Error);
}

TEST_CASE("simple roots span every root with same-sign integer coefficients") {
    for (const auto& c : kCases) {
        const auto rs = build_root_system(c.family, c.rank);
        const auto base = simple_roots(rs);
        REQUIRE(static_cast<int>(base.size()) == c.rank);
        const MatX coeff = base_coefficients(rs, base);
        for (Eigen::Index r = 0; r < coeff.rows(); ++r) {
            bool all_nonneg = true;
            bool all_nonpos = true;
            for (Eigen::Index k = 0; k < coeff.cols(); ++k) {
                const double x = coeff(r, k);
                CHECK(std::abs(x - std::round(x)) < 1e-9);
                all_nonneg = all_nonneg && x > -1e-9;
                all_nonpos = all_nonpos && x < 1e-9;
            }
            CHECK((all_nonneg || all_nonpos));
        }
    }
}

TEST_CASE("Cartan matrices") {
    const auto cm_g2 = cartan_matrix(simple_roots(build_root_system(Family::G, 2)));
    CHECK(cm_g2.a.diagonal().isConstant(2));
    CHECK(cm_g2.a(0, 1) * cm_g2.a(1, 0) == 3);

    const auto cm_a3 = cartan_matrix(simple_roots(build_root_system(Family::A, 3)));
    Eigen::Matrix3i expected;
    expected << 2, -1, 0, -1, 2, -1, 0, -1, 2;
    CHECK(cm_a3.a == expected);

    // Determinants: A_n -> n+1, B_n and C_n -> 2, D_n -> 4, E6 -> 3, E7 -> 2, E8 -> 1, F4 and G2 -> 1.
    const std::pair<Case, int> dets[] = {
        {{Family::A, 4, 0}, 5}, {{Family::B, 3, 0}, 2}, {{Family::C, 4, 0}, 2}, {{Family::D, 4, 0}, 4},
        {{Family::E, 6, 0}, 3}, {{Family::E, 7, 0}, 2}, {{Family::E, 8, 0}, 1}, {{Family::F, 4, 0}, 1},
        {{Family::G, 2, 0}, 1},
    };
    for (const auto& [c, det] : dets) {
        const auto cm = cartan_matrix(simple_roots(build_root_system(c.family, c.rank)));
        CHECK(std::lround(cm.a.cast<double>().determinant()) == det);
    }
}

TEST_CASE("Cartan matrix rejects non-integral bases") {
    // Two roots at 75 degrees do not give integer entries.
    const DoubledRoot a{2, 0};
    const DoubledRoot b{1, 3};
    try {
        cartan_matrix({a, b});
        FAIL("expected NonIntegerEntry");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonIntegerEntry);
    }
}

TEST_CASE("classification round trip") {
    for (const auto& c : kCases) {
        const Label want{c.family, c.rank};
        CAPTURE(want.str());
        const auto rs = build_root_system(c.family, c.rank);
        const auto base = simple_roots(rs);
        const auto d = dynkin_diagram(cartan_matrix(base), base);
        CHECK_FALSE(admissibility_violation(d).has_value());
        const auto labels = classify_diagram(d);
        REQUIRE(labels.size() == 1);
        CHECK(labels[0] == want);
    }
}

TEST_CASE("Dynkin text and node removal") {
    const auto rs = build_root_system(Family::B, 3);
    const auto base = simple_roots(rs);
    const auto d = dynkin_diagram(cartan_matrix(base), base);
    const std::string text = d.to_text();
    CHECK(text.find("x2 arrow") != std::string::npos);
    CHECK(text.find("node 0") != std::string::npos);

    // Removing an end node of B3 leaves B2 or A2.
    const auto labels = classify_diagram(d.without_node(0));
    REQUIRE(labels.size() == 1);
    CHECK(labels[0].rank == 2);

    // D4 minus its branch node falls apart into three A1 components.
    const auto d4 = build_root_system(Family::D, 4);
    const auto b4 = simple_roots(d4);
    const auto dd4 = dynkin_diagram(cartan_matrix(b4), b4);
    int branch = -1;
    for (int n = 0; n < dd4.size(); ++n) {
        int deg = 0;
        for (const auto& e : dd4.edges) deg += (e.i == n || e.j == n);
        if (deg == 3) branch = n;
    }
    REQUIRE(branch >= 0);
    const auto parts = classify_diagram(dd4.without_node(branch));
    CHECK(parts.size() == 3);
    for (const auto& l : parts) CHECK(l == Label{Family::A, 1});
}

TEST_CASE("admissibility rules") {
    DynkinDiagram loop;
    loop.nodes = {"a", "b", "c"};
    loop.edges = {{0, 1, 1, {}}, {1, 2, 1, {}}, {0, 2, 1, {}}};
    CHECK(admissibility_violation(loop) == 2);

    DynkinDiagram star;
    star.nodes = {"c", "a", "b", "d", "e"};
    star.edges = {{0, 1, 1, {}}, {0, 2, 1, {}}, {0, 3, 1, {}}, {0, 4, 1, {}}};
    CHECK(admissibility_violation(star) == 3);

    // A triple line attached to a third node already puts four lines on the
    // shared node, so the line-count rule is the first one to fail.
    DynkinDiagram long_triple;
    long_triple.nodes = {"a", "b", "c"};
    long_triple.edges = {{0, 1, 3, 0}, {1, 2, 1, {}}};
    CHECK(admissibility_violation(long_triple) == 3);

    DynkinDiagram g2;
    g2.nodes = {"a", "b"};
    g2.edges = {{0, 1, 3, 0}};
    CHECK_FALSE(admissibility_violation(g2).has_value());

    DynkinDiagram doubled;  // two double edges meet: four lines at the middle node
    doubled.nodes = {"a", "b", "c"};
    doubled.edges = {{0, 1, 2, 0}, {1, 2, 2, 2}};
    CHECK(admissibility_violation(doubled) == 3);

    // Three arms of length two pass the checked rules but are not a finite type.
    DynkinDiagram arms;
    arms.nodes = {"c", "a1", "a2", "b1", "b2", "d1", "d2"};
    arms.edges = {{0, 1, 1, {}}, {1, 2, 1, {}}, {0, 3, 1, {}}, {3, 4, 1, {}}, {0, 5, 1, {}}, {5, 6, 1, {}}};
    CHECK_FALSE(admissibility_violation(arms).has_value());
    try {
        classify_diagram(arms);
        FAIL("expected Unclassifiable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Unclassifiable);
    }
}
