#include "liemech/algebra.hpp"

#include "liemech/error.hpp"

#include <algorithm>
#include <sstream>

namespace liemech::algebra {

namespace {

struct Graph {
    std::vector<std::vector<int>> neighbors;
    std::vector<int> lines;  // lines attached to each node, counted with multiplicity
};

Graph make_graph(const DynkinDiagram& d) {
    Graph g;
    g.neighbors.resize(d.nodes.size());
    g.lines.assign(d.nodes.size(), 0);
    for (const auto& e : d.edges) {
        g.neighbors[e.i].push_back(e.j);
        g.neighbors[e.j].push_back(e.i);
        g.lines[e.i] += e.multiplicity;
        g.lines[e.j] += e.multiplicity;
    }
    return g;
}

std::vector<std::vector<int>> components(const Graph& g) {
    const auto n = g.neighbors.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> members{static_cast<int>(s)};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t h = 0; h < members.size(); ++h) {
            for (int j : g.neighbors[members[h]]) {
                if (comp[j] < 0) {
                    comp[j] = comp[s];
                    members.push_back(j);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

void check_edges(const DynkinDiagram& d) {
    const int n = d.size();
    for (const auto& e : d.edges) {
        if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n || e.i == e.j) {
            throw Error(ErrorKind::InvalidArgument, "Dynkin edge " + std::to_string(e.i) + " - " +
                                                        std::to_string(e.j) + " has invalid endpoints");
        }
        if (e.multiplicity < 1) {
            throw Error(ErrorKind::InvalidArgument, "Dynkin edge multiplicity must be positive");
        }
        if (e.arrow_from && *e.arrow_from != e.i && *e.arrow_from != e.j) {
            throw Error(ErrorKind::InvalidArgument, "arrow must start at an endpoint of its edge");
        }
    }
}

// Nodes of the arm hanging off `from` through `first`, excluding `from`.
int arm_length(const Graph& g, int from, int first) {
    int length = 1;
    int prev = from;
    int cur = first;
    while (true) {
        int next = -1;
        for (int j : g.neighbors[cur]) {
            if (j != prev) next = j;
        }
        if (next < 0) return length;
        prev = cur;
        cur = next;
        ++length;
    }
}

Label classify_component(const DynkinDiagram& d, const Graph& g, const std::vector<int>& members) {
    const int k = static_cast<int>(members.size());
    if (k == 1) return {Family::A, 1};

    std::vector<const DynkinEdge*> edges;
    for (const auto& e : d.edges) {
        if (std::binary_search(members.begin(), members.end(), e.i)) edges.push_back(&e);
    }
    const auto degree = [&](int v) { return static_cast<int>(g.neighbors[v].size()); };

    const auto unclassifiable = [&](const std::string& why) {
        return Error(ErrorKind::Unclassifiable, "component with " + std::to_string(k) + " nodes: " + why);
    };

    int branch_nodes = 0;
    int branch = -1;
    for (int v : members) {
        if (degree(v) > 3) throw unclassifiable("node of degree > 3");
        if (degree(v) == 3) {
            ++branch_nodes;
            branch = v;
        }
    }

    std::vector<const DynkinEdge*> multi;
    for (const auto* e : edges) {
        if (e->multiplicity > 3) throw unclassifiable("edge with more than three lines");
        if (e->multiplicity > 1) multi.push_back(e);
    }

    if (!multi.empty()) {
        if (multi.size() > 1 || branch_nodes > 0) throw unclassifiable("multiple edge in a non-path diagram");
        const DynkinEdge& e = *multi.front();
        if (e.multiplicity == 3) {
            if (k != 2) throw unclassifiable("triple edge with more than two nodes");
            return {Family::G, 2};
        }
        const int di = degree(e.i);
        const int dj = degree(e.j);
        if (di == 2 && dj == 2) {
            if (k == 4) return {Family::F, 4};
            throw unclassifiable("double edge in the interior of a path longer than four nodes");
        }
        if (k == 2) return {Family::B, 2};
        const int end = di == 1 ? e.i : e.j;
        if (!e.arrow_from) throw unclassifiable("double edge without arrow");
        // Arrow points at the shorter root; a short end node is B, a long one is C.
        return {*e.arrow_from == end ? Family::C : Family::B, k};
    }

    if (branch_nodes == 0) return {Family::A, k};
    if (branch_nodes > 1) throw unclassifiable("more than one branch node");

    std::vector<int> arms;
    for (int j : g.neighbors[branch]) arms.push_back(arm_length(g, branch, j));
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return {Family::D, k};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {Family::E, k};
    throw unclassifiable("branch arms (" + std::to_string(arms[0]) + "," + std::to_string(arms[1]) + "," +
                         std::to_string(arms[2]) + ") match no family");
}

}  // namespace

std::string DynkinDiagram::to_text() const {
    std::ostringstream os;
    for (int i = 0; i < size(); ++i) os << "node " << i << " " << nodes[i] << "\n";
    for (const auto& e : edges) {
        os << e.i << " - " << e.j << " x" << e.multiplicity;
        if (e.arrow_from) {
            const int to = *e.arrow_from == e.i ? e.j : e.i;
            os << " arrow " << *e.arrow_from << ">" << to;
        }
        os << "\n";
    }
    return os.str();
}

DynkinDiagram DynkinDiagram::without_node(int node) const {
    DynkinDiagram out;
    const auto remap = [node](int i) { return i > node ? i - 1 : i; };
    for (int i = 0; i < size(); ++i) {
        if (i != node) out.nodes.push_back(nodes[i]);
    }
    for (const auto& e : edges) {
        if (e.i == node || e.j == node) continue;
        DynkinEdge r = e;
        r.i = remap(e.i);
        r.j = remap(e.j);
        if (e.arrow_from) r.arrow_from = remap(*e.arrow_from);
        out.edges.push_back(r);
    }
    return out;
}

std::optional<int> admissibility_violation(const DynkinDiagram& d) {
    check_edges(d);
    const Graph g = make_graph(d);
    const auto comps = components(g);

    // Rule 2: no loops. A forest has exactly (nodes - components) edges,
    // and parallel edges between the same pair count as a loop.
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : d.edges) pairs.emplace_back(std::min(e.i, e.j), std::max(e.i, e.j));
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) return 2;
    if (d.edges.size() + comps.size() != d.nodes.size()) return 2;

    // Rule 3: at most three lines at any node.
    for (int lines : g.lines) {
        if (lines > 3) return 3;
    }

    // Rule 5: a triple line only in a two-node component.
    for (const auto& e : d.edges) {
        if (e.multiplicity != 3) continue;
        for (const auto& c : comps) {
            if (std::binary_search(c.begin(), c.end(), e.i) && c.size() != 2) return 5;
        }
    }
    return std::nullopt;
}

DynkinDiagram dynkin_diagram(const CartanMatrix& cm, const std::vector<DoubledRoot>& base) {
    const int n = cm.size();
    if (cm.a.cols() != n || static_cast<int>(base.size()) != n) {
        throw Error(ErrorKind::InvalidArgument, "Cartan matrix and base sizes differ");
    }
    DynkinDiagram d;
    for (int i = 0; i < n; ++i) {
        if (cm.a(i, i) != 2) throw Error(ErrorKind::InvalidArgument, "Cartan diagonal entry is not 2");
        d.nodes.push_back(format_root(base[i]));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int aij = cm.a(i, j);
            const int aji = cm.a(j, i);
            if ((aij == 0) != (aji == 0)) {
                throw Error(ErrorKind::InvalidArgument, "Cartan entries (" + std::to_string(i) + "," +
                                                            std::to_string(j) + ") break a_ij = 0 <=> a_ji = 0");
            }
            if (aij == 0) continue;
            DynkinEdge e{i, j, aij * aji, std::nullopt};
            // |a_ij| < |a_ji| means |alpha_i| > |alpha_j|: arrow i -> j.
            if (std::abs(aij) < std::abs(aji)) e.arrow_from = i;
            if (std::abs(aij) > std::abs(aji)) e.arrow_from = j;
            d.edges.push_back(e);
        }
    }
    if (const auto rule = admissibility_violation(d)) {
        throw Error(ErrorKind::Inadmissible, "diagram violates admissibility rule " + std::to_string(*rule));
    }
    return d;
}

std::vector<Label> classify_diagram(const DynkinDiagram& d) {
    if (const auto rule = admissibility_violation(d)) {
        throw Error(ErrorKind::Inadmissible, "diagram violates admissibility rule " + std::to_string(*rule));
    }
    const Graph g = make_graph(d);
    std::vector<Label> labels;
    for (const auto& members : components(g)) labels.push_back(classify_component(d, g, members));
    return labels;
}

}  // namespace liemech::algebra
