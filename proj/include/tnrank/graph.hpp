#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace tnrank {

/// Undirected edge {u, v} with a positive weight. Vertices are 0-based.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    std::uint64_t weight = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One positive integer per edge, aligned with edge ids. The all-zero tuple is
/// used for the zero tensor.
class RankTuple {
public:
    RankTuple() = default;
    explicit RankTuple(std::vector<std::size_t> values) : values_(std::move(values)) {}
    RankTuple(std::initializer_list<std::size_t> values) : values_(values) {}

    std::size_t size() const { return values_.size(); }
    std::size_t operator[](std::size_t i) const { return values_[i]; }
    std::size_t& operator[](std::size_t i) { return values_[i]; }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }
    const std::vector<std::size_t>& values() const { return values_; }

    /// Componentwise <=.
    bool leq(const RankTuple& other) const;
    RankTuple min(const RankTuple& other) const;

    friend bool operator==(const RankTuple&, const RankTuple&) = default;

private:
    std::vector<std::size_t> values_;
};

/// Undirected weighted multigraph on vertices 0..d-1; edge id = list position.
class NetworkGraph {
public:
    NetworkGraph() = default;
    NetworkGraph(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const { return d_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t id) const { return edges_.at(id); }

    /// Edge ids incident to v, ascending (a self-loop is listed once).
    std::vector<std::size_t> incident_edges(std::size_t v) const;
    std::size_t degree(std::size_t v) const;
    /// Endpoint of edge e other than v.
    std::size_t other_end(std::size_t e, std::size_t v) const;

    /// No self-loops, u < v on every edge, no repeated pairs.
    bool is_normalized() const;
    bool is_connected() const;
    bool has_isolated_vertex() const;
    /// Edge weights as a rank tuple.
    RankTuple weights() const;

    friend bool operator==(const NetworkGraph&, const NetworkGraph&) = default;

private:
    std::size_t d_ = 0;
    std::vector<Edge> edges_;
};

struct Normalization {
    NetworkGraph graph;
    /// Original edge id -> normalized edge id; nullopt for removed self-loops.
    std::vector<std::optional<std::size_t>> edge_map;
};

/// Drops self-loops and merges parallel edges (weight = product), keeping the
/// relative order of first occurrences. Idempotent.
Normalization normalize_with_map(const NetworkGraph& g);
NetworkGraph normalize(const NetworkGraph& g);

enum class GraphKind { path, star, tree, cycle, cyclic_general, disconnected };

std::string_view to_string(GraphKind kind);

struct GraphClass {
    GraphKind kind = GraphKind::disconnected;
    bool is_tree() const { return kind == GraphKind::path || kind == GraphKind::star || kind == GraphKind::tree; }
};

/// Path and star take precedence over the generic tree label (P_3 is a path).
GraphClass classify(const NetworkGraph& g);

/// Vertex sets of the two components after deleting tree edge e, in the
/// order (component of u, component of v); each sorted ascending.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> edge_split(const NetworkGraph& g, std::size_t e);

/// Product of r over edges incident to v (1 for an isolated vertex).
std::uint64_t incident_weight_product(const NetworkGraph& g, const RankTuple& r, std::size_t v);

// Standard graphs, unit weights.
/// Edges {0,1}, {1,2}, ..., {d-2,d-1}.
NetworkGraph path_graph(std::size_t d);
/// Path edges followed by the closing edge {0, d-1}.
NetworkGraph cycle_graph(std::size_t d);
/// Center 0; edges {0,k} for k = 1..d-1.
NetworkGraph star_graph(std::size_t d);
/// Lexicographic edge order.
NetworkGraph complete_graph(std::size_t d);

/// Every labeled tree on d vertices (Pruefer enumeration; edges sorted).
std::vector<NetworkGraph> all_labeled_trees(std::size_t d);

}  // namespace tnrank
