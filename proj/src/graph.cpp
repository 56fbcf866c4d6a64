#include "tnrank/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>

namespace tnrank {

bool RankTuple::leq(const RankTuple& other) const {
    if (size() != other.size()) throw std::invalid_argument("rank tuples of different length");
    for (std::size_t i = 0; i < size(); ++i) {
        if (values_[i] > other.values_[i]) return false;
    }
    return true;
}

RankTuple RankTuple::min(const RankTuple& other) const {
    if (size() != other.size()) throw std::invalid_argument("rank tuples of different length");
    std::vector<std::size_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = std::min(values_[i], other.values_[i]);
    return RankTuple(std::move(out));
}

NetworkGraph::NetworkGraph(std::size_t vertex_count, std::vector<Edge> edges) : d_(vertex_count), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
        if (e.u >= d_ || e.v >= d_) {
            throw GraphError("edge endpoint " + std::to_string(std::max(e.u, e.v)) + " out of range for " +
                             std::to_string(d_) + " vertices");
        }
        if (e.weight == 0) throw GraphError("edge weights must be positive");
    }
}

std::vector<std::size_t> NetworkGraph::incident_edges(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].u == v || edges_[i].v == v) out.push_back(i);
    }
    return out;
}

std::size_t NetworkGraph::degree(std::size_t v) const { return incident_edges(v).size(); }

std::size_t NetworkGraph::other_end(std::size_t e, std::size_t v) const {
    const Edge& x = edge(e);
    if (x.u == v) return x.v;
    if (x.v == v) return x.u;
    throw GraphError("vertex is not an endpoint of the edge");
}

bool NetworkGraph::is_normalized() const {
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges_) {
        if (e.u >= e.v) return false;
        seen.emplace_back(e.u, e.v);
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

bool NetworkGraph::is_connected() const {
    if (d_ == 0) return true;
    std::vector<std::size_t> parent(d_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::size_t components = d_;
    for (const auto& e : edges_) {
        const auto a = find(e.u);
        const auto b = find(e.v);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

bool NetworkGraph::has_isolated_vertex() const {
    std::vector<bool> touched(d_, false);
    for (const auto& e : edges_) {
        if (e.u != e.v) touched[e.u] = touched[e.v] = true;
    }
    return std::find(touched.begin(), touched.end(), false) != touched.end();
}

RankTuple NetworkGraph::weights() const {
    std::vector<std::size_t> w;
    w.reserve(edges_.size());
    for (const auto& e : edges_) w.push_back(static_cast<std::size_t>(e.weight));
    return RankTuple(std::move(w));
}

Normalization normalize_with_map(const NetworkGraph& g) {
    Normalization out;
    std::vector<Edge> edges;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    out.edge_map.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        if (e.u == e.v) {
            out.edge_map.emplace_back(std::nullopt);
            continue;
        }
        const auto key = std::minmax(e.u, e.v);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, edges.size());
            out.edge_map.emplace_back(edges.size());
            edges.push_back({key.first, key.second, e.weight});
        } else {
            edges[it->second].weight *= e.weight;
            out.edge_map.emplace_back(it->second);
        }
    }
    out.graph = NetworkGraph(g.vertex_count(), std::move(edges));
    return out;
}

NetworkGraph normalize(const NetworkGraph& g) { return normalize_with_map(g).graph; }

std::string_view to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::path: return "path";
        case GraphKind::star: return "star";
        case GraphKind::tree: return "tree";
        case GraphKind::cycle: return "cycle";
        case GraphKind::cyclic_general: return "cyclic";
        case GraphKind::disconnected: return "disconnected";
    }
    return "unknown";
}

GraphClass classify(const NetworkGraph& g) {
    const NetworkGraph n = normalize(g);
    const std::size_t d = n.vertex_count();
    if (!n.is_connected()) return {GraphKind::disconnected};
    if (n.edge_count() + 1 == d) {
        std::size_t max_deg = 0;
        std::size_t leaves = 0;
        for (std::size_t v = 0; v < d; ++v) {
            const auto k = n.degree(v);
            max_deg = std::max(max_deg, k);
            if (k == 1) ++leaves;
        }
        if (max_deg <= 2) return {GraphKind::path};
        if (leaves + 1 == d) return {GraphKind::star};
        return {GraphKind::tree};
    }
    const bool two_regular = [&] {
        for (std::size_t v = 0; v < d; ++v) {
            if (n.degree(v) != 2) return false;
        }
        return true;
    }();
    if (two_regular && n.edge_count() == d) return {GraphKind::cycle};
    return {GraphKind::cyclic_general};
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> edge_split(const NetworkGraph& g, std::size_t e) {
    if (!classify(g).is_tree() || !g.is_normalized()) throw GraphError("edge_split needs a normalized tree");
    const Edge& cut = g.edge(e);
    const std::size_t d = g.vertex_count();
    std::vector<int> side(d, -1);
    auto flood = [&](std::size_t start, int label) {
        std::vector<std::size_t> stack{start};
        side[start] = label;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto id : g.incident_edges(v)) {
                if (id == e) continue;
                const auto w = g.other_end(id, v);
                if (side[w] < 0) {
                    side[w] = label;
                    stack.push_back(w);
                }
            }
        }
    };
    flood(cut.u, 0);
    flood(cut.v, 1);
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
    for (std::size_t v = 0; v < d; ++v) (side[v] == 0 ? out.first : out.second).push_back(v);
    return out;
}

std::uint64_t incident_weight_product(const NetworkGraph& g, const RankTuple& r, std::size_t v) {
    if (r.size() != g.edge_count()) throw GraphError("rank tuple length differs from edge count");
    std::uint64_t p = 1;
    for (auto id : g.incident_edges(v)) p *= r[id];
    return p;
}

NetworkGraph path_graph(std::size_t d) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < d; ++i) edges.push_back({i, i + 1, 1});
    return NetworkGraph(d, std::move(edges));
}

NetworkGraph cycle_graph(std::size_t d) {
    if (d < 3) throw GraphError("a cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < d; ++i) edges.push_back({i, i + 1, 1});
    edges.push_back({0, d - 1, 1});
    return NetworkGraph(d, std::move(edges));
}

NetworkGraph star_graph(std::size_t d) {
    std::vector<Edge> edges;
    for (std::size_t k = 1; k < d; ++k) edges.push_back({0, k, 1});
    return NetworkGraph(d, std::move(edges));
}

NetworkGraph complete_graph(std::size_t d) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) edges.push_back({i, j, 1});
    }
    return NetworkGraph(d, std::move(edges));
}

std::vector<NetworkGraph> all_labeled_trees(std::size_t d) {
    std::vector<NetworkGraph> out;
    if (d == 0) return out;
    if (d == 1) return {NetworkGraph(1, {})};
    if (d == 2) return {path_graph(2)};
    std::vector<std::size_t> code(d - 2, 0);
    while (true) {
        std::vector<std::size_t> deg(d, 1);
        for (auto c : code) ++deg[c];
        std::vector<Edge> edges;
        for (auto c : code) {
            std::size_t leaf = 0;
            while (deg[leaf] != 1) ++leaf;
            edges.push_back({std::min(leaf, c), std::max(leaf, c), 1});
            --deg[leaf];
            --deg[c];
        }
        std::size_t a = d, b = d;
        for (std::size_t v = 0; v < d; ++v) {
            if (deg[v] == 1) (a == d ? a : b) = v;
        }
        edges.push_back({a, b, 1});
        std::sort(edges.begin(), edges.end(),
                  [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
        out.emplace_back(d, std::move(edges));
        std::size_t k = 0;
        while (k < code.size() && ++code[k] == d) code[k++] = 0;
        if (k == code.size()) break;
    }
    return out;
}

}  // namespace tnrank
