#pragma once

#include <cstdint>
#include <cstdio>
#include <tuple>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheresync/eigen.hpp"
#include "spheresync/matrix.hpp"
#include "spheresync/rng.hpp"

namespace spheresync {

/// Weighted digraph on m >= 2 nodes. weight(i, j) is the weight of the edge
/// from node j into node i; the diagonal is identically zero.
class Digraph {
public:
    explicit Digraph(int m) : w_(check_order(m), m) {}

    int node_count() const { return w_.rows(); }

    double weight(int into, int from) const {
        check_node(into);
        check_node(from);
        return w_(into, from);
    }

    void set_weight(int into, int from, double w) {
        check_node(into);
        check_node(from);
        if (into == from)
            throw std::invalid_argument("Digraph: self-loops are not allowed");
        if (w < 0.0)
            throw std::invalid_argument("Digraph: edge weights must be nonnegative");
        w_(into, from) = w;
    }

    const Mat& weights() const { return w_; }

    friend bool operator==(const Digraph& a, const Digraph& b) { return a.w_ == b.w_; }

private:
    static int check_order(int m) {
        if (m < 2)
            throw std::invalid_argument("Digraph: need at least 2 nodes");
        return m;
    }
    void check_node(int v) const {
        if (v < 0 || v >= w_.rows())
            throw std::out_of_range("Digraph: node index out of range");
    }

    Mat w_;
};

/// In-degree Laplacian L = D - A. Rows sum to zero; off-diagonal entries
/// are -a_ij <= 0.
struct Laplacian {
    Mat entries;
    Digraph source;
};

inline Laplacian laplacian(const Digraph& g) {
    const int m = g.node_count();
    Mat l(m, m);
    for (int i = 0; i < m; ++i) {
        double degree = 0.0;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            const double a = g.weights()(i, j);
            degree += a;
            l(i, j) = -a;
        }
        l(i, i) = degree;
    }
    return {std::move(l), g};
}

/// True iff rank(L) = m - 1, with rank counted as singular values above
/// tol * sigma_max. Equivalent to the existence of a directed spanning tree.
inline bool has_spanning_tree(const Digraph& g, double tol = 1e-9) {
    if (tol <= 0.0)
        throw std::invalid_argument("has_spanning_tree: tolerance must be positive");
    return numeric_rank(laplacian(g).entries, tol) == g.node_count() - 1;
}

enum class GraphFamily {
    complete,
    directed_cycle,
    star_out,
    directed_path,
    random_spanning_tree_plus_edges,
    disconnected_pair,
};

inline std::string family_name(GraphFamily f) {
    switch (f) {
        case GraphFamily::complete: return "complete";
        case GraphFamily::directed_cycle: return "directed_cycle";
        case GraphFamily::star_out: return "star_out";
        case GraphFamily::directed_path: return "directed_path";
        case GraphFamily::random_spanning_tree_plus_edges: return "random_spanning_tree_plus_edges";
        case GraphFamily::disconnected_pair: return "disconnected_pair";
    }
    throw std::logic_error("family_name: unreachable");
}

inline GraphFamily family_from_name(const std::string& name) {
    for (GraphFamily f : {GraphFamily::complete, GraphFamily::directed_cycle, GraphFamily::star_out,
                          GraphFamily::directed_path, GraphFamily::random_spanning_tree_plus_edges,
                          GraphFamily::disconnected_pair}) {
        if (family_name(f) == name) return f;
    }
    throw std::invalid_argument("unknown graph family: " + name);
}

/// Named graph families. Deterministic families use unit weights; the random
/// family draws weights in [0.5, 1.5) reproducibly from the seed.
inline Digraph generate(GraphFamily family, int m, std::uint64_t seed = 0) {
    Digraph g(m);
    switch (family) {
        case GraphFamily::complete:
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if (i != j) g.set_weight(i, j, 1.0);
            break;
        case GraphFamily::directed_cycle:
            for (int i = 0; i < m; ++i) g.set_weight(i, (i + 1) % m, 1.0);
            break;
        case GraphFamily::star_out:
            for (int i = 1; i < m; ++i) g.set_weight(i, 0, 1.0);
            break;
        case GraphFamily::directed_path:
            for (int i = 1; i < m; ++i) g.set_weight(i, i - 1, 1.0);
            break;
        case GraphFamily::random_spanning_tree_plus_edges: {
            Rng rng(seed);
            for (int i = 1; i < m; ++i) {
                const int parent = rng.uniform_int(0, i);
                g.set_weight(i, parent, rng.uniform(0.5, 1.5));
            }
            const int extra = rng.uniform_int(0, m + 1);
            for (int k = 0; k < extra; ++k) {
                const int into = rng.uniform_int(0, m);
                const int from = rng.uniform_int(0, m);
                if (into == from || g.weights()(into, from) != 0.0) continue;
                g.set_weight(into, from, rng.uniform(0.5, 1.5));
            }
            break;
        }
        case GraphFamily::disconnected_pair: {
            const int half = m / 2;
            auto add_cycle = [&](int lo, int hi) {
                const int size = hi - lo;
                if (size < 2) return;
                for (int i = lo; i < hi; ++i) {
                    const int next = lo + (i - lo + 1) % size;
                    g.set_weight(i, next, 1.0);
                }
            };
            add_cycle(0, half);
            add_cycle(half, m);
            break;
        }
    }
    return g;
}

namespace detail {

inline std::runtime_error edge_list_error(int line_no, const std::string& what) {
    return std::runtime_error("edge list, line " + std::to_string(line_no) + ": " + what);
}

} // namespace detail

/// Edge-list text format: first line holds m; each following line reads
/// "i j w" for an edge from j into i with weight w > 0 (0-based indices).
/// '#' starts a comment line; blank lines are skipped.
inline Digraph read_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    int m = -1;
    std::vector<std::tuple<int, int, double>> edges;

    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        const auto first = trimmed.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (trimmed[first] == '#') continue;

        std::istringstream ss(trimmed);
        if (m < 0) {
            std::string extra;
            if (!(ss >> m) || (ss >> extra))
                throw detail::edge_list_error(line_no, "expected node count");
            if (m < 2)
                throw detail::edge_list_error(line_no, "node count must be at least 2");
            continue;
        }
        int into = 0, from = 0;
        double w = 0.0;
        std::string extra;
        if (!(ss >> into >> from >> w) || (ss >> extra))
            throw detail::edge_list_error(line_no, "expected 'i j w'");
        if (into < 0 || into >= m || from < 0 || from >= m)
            throw detail::edge_list_error(line_no, "node index out of range");
        if (into == from)
            throw detail::edge_list_error(line_no, "self-loop");
        if (w <= 0.0)
            throw detail::edge_list_error(line_no, "weight must be positive");
        edges.emplace_back(into, from, w);
    }
    if (m < 0)
        throw std::runtime_error("edge list: missing node count line");

    Digraph g(m);
    for (const auto& [into, from, w] : edges) {
        if (g.weights()(into, from) != 0.0)
            throw std::runtime_error("edge list: duplicate edge " + std::to_string(into) + " <- " +
                                     std::to_string(from));
        g.set_weight(into, from, w);
    }
    return g;
}

inline Digraph read_edge_list(const std::string& text) {
    std::istringstream ss(text);
    return read_edge_list(ss);
}

inline Digraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path);
    return read_edge_list(in);
}

/// Inverse of read_edge_list; weights are printed with 17 significant digits
/// so the round trip is bit-exact.
inline std::string write_edge_list(const Digraph& g) {
    std::ostringstream out;
    const int m = g.node_count();
    out << m << "\n";
    char buf[64];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double w = g.weights()(i, j);
            if (w == 0.0) continue;
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, j, w);
            out << buf;
        }
    return out.str();
}

} // namespace spheresync
