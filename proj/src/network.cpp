#include "tnrank/network.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "random.hpp"

namespace tnrank {

namespace {

Tensor padding_matrix(std::size_t rows, std::size_t cols, ScalarMode mode) {
    Tensor::ExactData ed;
    Tensor::FloatData fd;
    if (mode == ScalarMode::exact) ed.resize(rows * cols); else fd.resize(rows * cols);
    for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
        if (mode == ScalarMode::exact) ed[k * cols + k] = 1; else fd[k * cols + k] = 1.0;
    }
    if (mode == ScalarMode::exact) return Tensor({rows, cols}, std::move(ed));
    return Tensor({rows, cols}, std::move(fd));
}

std::size_t position_in(const std::vector<std::size_t>& v, std::size_t x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

// Group-major ordering of the input vertices used by merge_modes/expand_merged.
std::vector<std::size_t> grouped_order(const Reduction& red) {
    std::vector<std::size_t> perm;
    for (const auto& g : red.groups) perm.insert(perm.end(), g.begin(), g.end());
    return perm;
}

}  // namespace

ProblemSpec ProblemSpec::from_graph(NetworkGraph g, std::vector<std::size_t> vertex_dims) {
    ProblemSpec s{std::move(g), {}, std::move(vertex_dims)};
    s.edge_dims = s.graph.weights();
    return s;
}

void ProblemSpec::validate() const {
    if (vertex_dims.size() != graph.vertex_count()) {
        throw GraphError("vertex_dims has " + std::to_string(vertex_dims.size()) + " entries for " +
                         std::to_string(graph.vertex_count()) + " vertices");
    }
    if (edge_dims.size() != graph.edge_count()) {
        throw GraphError("edge_dims has " + std::to_string(edge_dims.size()) + " entries for " +
                         std::to_string(graph.edge_count()) + " edges");
    }
    if (graph.vertex_count() == 0) throw GraphError("a spec needs at least one vertex");
    for (auto n : vertex_dims) {
        if (n == 0) throw GraphError("vertex dimensions must be positive");
    }
    for (auto r : edge_dims) {
        if (r == 0) throw GraphError("edge dimensions must be positive");
    }
}

std::size_t ProblemSpec::parameter_count() const {
    std::size_t total = 0;
    for (std::size_t v = 0; v < order(); ++v) total += vertex_dims[v] * incident_weight_product(graph, edge_dims, v);
    return total;
}

std::size_t ProblemSpec::ambient_dimension() const {
    return std::accumulate(vertex_dims.begin(), vertex_dims.end(), std::size_t{1}, std::multiplies<>());
}

Shape ProblemSpec::factor_shape(std::size_t v) const {
    Shape s;
    for (auto e : graph.incident_edges(v)) s.push_back(edge_dims[e]);
    s.push_back(vertex_dims.at(v));
    return s;
}

TNState::TNState(ProblemSpec spec, std::vector<Tensor> factors) : spec_(std::move(spec)), factors_(std::move(factors)) {
    spec_.validate();
    const auto& g = spec_.graph;
    if (!g.is_normalized()) throw GraphError("tensor network states need a normalized graph");
    if (g.vertex_count() > 1 && g.has_isolated_vertex()) {
        throw GraphError("graph has an isolated vertex; the network would be {0}");
    }
    if (factors_.size() != g.vertex_count()) throw ShapeError("expected one factor per vertex");
    for (std::size_t v = 0; v < factors_.size(); ++v) {
        if (factors_[v].dims() != spec_.factor_shape(v)) {
            throw ShapeError("factor " + std::to_string(v + 1) + " does not match the layout of its vertex");
        }
        require_same_mode(factors_[v], factors_[0]);
    }
}

ScalarMode TNState::mode() const { return factors_.at(0).mode(); }

void CPDecomposition::validate() const {
    if (dims.empty()) throw ShapeError("a CP decomposition needs order >= 1");
    for (const auto& term : terms) {
        if (term.size() != dims.size()) throw ShapeError("CP term has the wrong number of vectors");
        for (std::size_t i = 0; i < term.size(); ++i) {
            if (term[i].dims() != Shape{dims[i]}) throw ShapeError("CP vector length differs from the slot dimension");
            if (term[i].mode() != mode) throw ModeMismatch("CP vector in the wrong scalar mode");
        }
    }
}

Tensor CPDecomposition::to_tensor() const {
    validate();
    Tensor sum = Tensor::zeros(dims, mode);
    for (const auto& term : terms) {
        Tensor t = term[0];
        for (std::size_t i = 1; i < term.size(); ++i) t = outer(t, term[i]);
        sum = sum + t;
    }
    return sum;
}

Tensor contract_network(const TNState& state) {
    struct Piece {
        Tensor t;
        std::vector<long> labels;  // edge id, or -(v+1) for a physical mode
        std::size_t min_vertex;
    };
    const auto& g = state.graph();
    std::vector<Piece> pieces;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        Piece p{state.factor(v), {}, v};
        for (auto e : g.incident_edges(v)) p.labels.push_back(static_cast<long>(e));
        p.labels.push_back(-static_cast<long>(v) - 1);
        pieces.push_back(std::move(p));
    }

    auto shared = [](const Piece& a, const Piece& b) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < a.labels.size(); ++i) {
            if (a.labels[i] < 0) continue;
            for (std::size_t j = 0; j < b.labels.size(); ++j) {
                if (a.labels[i] == b.labels[j]) pairs.emplace_back(i, j);
            }
        }
        return pairs;
    };

    while (pieces.size() > 1) {
        std::optional<std::tuple<double, std::size_t, std::size_t>> best_key;
        std::size_t best_a = 0, best_b = 0;
        for (std::size_t a = 0; a < pieces.size(); ++a) {
            for (std::size_t b = a + 1; b < pieces.size(); ++b) {
                const auto pairs = shared(pieces[a], pieces[b]);
                if (pairs.empty()) continue;
                double cost = 1.0;
                for (std::size_t i = 0; i < pieces[a].labels.size(); ++i) {
                    if (std::none_of(pairs.begin(), pairs.end(), [&](auto& p) { return p.first == i; })) {
                        cost *= static_cast<double>(pieces[a].t.dim(i));
                    }
                }
                for (std::size_t j = 0; j < pieces[b].labels.size(); ++j) {
                    if (std::none_of(pairs.begin(), pairs.end(), [&](auto& p) { return p.second == j; })) {
                        cost *= static_cast<double>(pieces[b].t.dim(j));
                    }
                }
                const auto lo = std::min(pieces[a].min_vertex, pieces[b].min_vertex);
                const auto hi = std::max(pieces[a].min_vertex, pieces[b].min_vertex);
                const auto key = std::make_tuple(cost, lo, hi);
                if (!best_key || key < *best_key) {
                    best_key = key;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (!best_key) break;
        Piece& a = pieces[best_a];
        Piece& b = pieces[best_b];
        const auto pairs = shared(a, b);
        Piece merged{contract_pairs(a.t, b.t, pairs), {}, std::min(a.min_vertex, b.min_vertex)};
        for (std::size_t i = 0; i < a.labels.size(); ++i) {
            if (std::none_of(pairs.begin(), pairs.end(), [&](auto& p) { return p.first == i; })) merged.labels.push_back(a.labels[i]);
        }
        for (std::size_t j = 0; j < b.labels.size(); ++j) {
            if (std::none_of(pairs.begin(), pairs.end(), [&](auto& p) { return p.second == j; })) merged.labels.push_back(b.labels[j]);
        }
        pieces[best_a] = std::move(merged);
        pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(best_b));
    }

    std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.min_vertex < y.min_vertex; });
    Piece out = std::move(pieces[0]);
    for (std::size_t k = 1; k < pieces.size(); ++k) {
        out.t = outer(out.t, pieces[k].t);
        out.labels.insert(out.labels.end(), pieces[k].labels.begin(), pieces[k].labels.end());
    }
    std::vector<std::size_t> perm(g.vertex_count());
    for (std::size_t v = 0; v < perm.size(); ++v) {
        perm[v] = static_cast<std::size_t>(
            std::find(out.labels.begin(), out.labels.end(), -static_cast<long>(v) - 1) - out.labels.begin());
    }
    return permute(out.t, perm);
}

TNState random_state(const ProblemSpec& spec, std::uint64_t seed, ScalarMode mode) {
    spec.validate();
    detail::Sampler rng(seed);
    std::vector<Tensor> factors;
    for (std::size_t v = 0; v < spec.order(); ++v) {
        Shape s = spec.factor_shape(v);
        const std::size_t n = shape_size(s);
        if (mode == ScalarMode::floating) {
            Tensor::FloatData d(n);
            for (auto& x : d) x = rng.complex_normal();
            factors.emplace_back(std::move(s), std::move(d));
        } else {
            Tensor::ExactData d(n);
            for (auto& x : d) {
                const long re = rng.integer(-3, 3);
                const long im = rng.integer(-3, 3);
                x = GaussianRational(mpq_class(re), mpq_class(im));
            }
            factors.emplace_back(std::move(s), std::move(d));
        }
    }
    return TNState(spec, std::move(factors));
}

TNState universal_embed(const CPDecomposition& cp, const NetworkGraph& g) {
    cp.validate();
    if (g.vertex_count() != cp.order()) {
        throw ShapeError("graph has " + std::to_string(g.vertex_count()) + " vertices but the CP has order " +
                         std::to_string(cp.order()));
    }
    if (!g.is_normalized()) throw GraphError("universal_embed needs a normalized graph");
    if (!g.is_connected()) throw GraphError("universal_embed needs a connected graph");
    const std::size_t r = cp.rank();
    ProblemSpec spec{g, RankTuple(std::vector<std::size_t>(g.edge_count(), std::max<std::size_t>(r, 1))), cp.dims};
    std::vector<Tensor> factors;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const Shape s = spec.factor_shape(v);
        const std::size_t n = cp.dims[v];
        // Offset of (p, ..., p, 0): p times the sum of the bond strides.
        std::size_t diag_stride = 0, stride = n;
        for (std::size_t k = s.size() - 1; k-- > 0;) {
            diag_stride += stride;
            stride *= s[k];
        }
        Tensor f = Tensor::zeros(s, cp.mode);
        if (cp.mode == ScalarMode::exact) {
            auto d = f.exact();
            for (std::size_t p = 0; p < r; ++p) {
                const auto& vec = cp.terms[p][v].exact();
                for (std::size_t x = 0; x < n; ++x) d[p * diag_stride + x] = vec[x];
            }
            f = Tensor(s, std::move(d));
        } else {
            auto d = f.floating();
            for (std::size_t p = 0; p < r; ++p) {
                const auto& vec = cp.terms[p][v].floating();
                for (std::size_t x = 0; x < n; ++x) d[p * diag_stride + x] = vec[x];
            }
            f = Tensor(s, std::move(d));
        }
        factors.push_back(std::move(f));
    }
    return TNState(std::move(spec), std::move(factors));
}

std::string_view to_string(Criticality c) {
    switch (c) {
        case Criticality::subcritical: return "subcritical";
        case Criticality::critical: return "critical";
        case Criticality::supercritical: return "supercritical";
        case Criticality::mixed: return "mixed";
    }
    return "mixed";
}

CriticalityReport criticality(const ProblemSpec& spec) {
    spec.validate();
    CriticalityReport rep;
    bool any_sub = false, any_super = false;
    for (std::size_t v = 0; v < spec.order(); ++v) {
        const auto m = incident_weight_product(spec.graph, spec.edge_dims, v);
        const auto n = static_cast<std::uint64_t>(spec.vertex_dims[v]);
        if (n < m) {
            rep.vertices.push_back(Criticality::subcritical);
            any_sub = true;
        } else if (n == m) {
            rep.vertices.push_back(Criticality::critical);
        } else {
            rep.vertices.push_back(Criticality::supercritical);
            any_super = true;
        }
    }
    if (any_sub && any_super) rep.overall = Criticality::mixed;
    else if (any_sub) rep.overall = Criticality::subcritical;
    else if (any_super) rep.overall = Criticality::supercritical;
    else rep.overall = Criticality::critical;
    return rep;
}

Reduction reduce_degree_one(const ProblemSpec& spec, std::optional<std::size_t> vertex) {
    spec.validate();
    const auto& g = spec.graph;
    if (!g.is_normalized()) throw GraphError("reduce_degree_one needs a normalized graph");
    auto eligible = [&](std::size_t v) {
        if (g.degree(v) != 1) return false;
        return spec.vertex_dims[v] <= spec.edge_dims[g.incident_edges(v)[0]];
    };
    std::optional<std::size_t> pick;
    if (vertex) {
        if (*vertex >= g.vertex_count()) throw GraphError("vertex out of range");
        if (!eligible(*vertex)) throw GraphError("vertex is not a subcritical or critical degree-one vertex");
        pick = vertex;
    } else {
        for (std::size_t v = 0; v < g.vertex_count() && !pick; ++v) {
            if (eligible(v)) pick = v;
        }
    }
    if (!pick) throw GraphError("no subcritical or critical degree-one vertex to reduce");

    Reduction red;
    red.removed = *pick;
    red.removed_edge = g.incident_edges(red.removed)[0];
    red.absorbed_into = g.other_end(red.removed_edge, red.removed);
    const std::size_t d = g.vertex_count();
    red.vertex_map.resize(d);
    for (std::size_t v = 0; v < d; ++v) red.vertex_map[v] = v < red.removed ? v : v - 1;
    red.vertex_map[red.removed] = red.vertex_map[red.absorbed_into];

    std::vector<Edge> edges;
    std::vector<std::size_t> rdims;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (e == red.removed_edge) continue;
        const Edge& x = g.edge(e);
        edges.push_back({red.vertex_map[x.u], red.vertex_map[x.v], x.weight});
        rdims.push_back(spec.edge_dims[e]);
    }
    std::vector<std::size_t> vdims;
    for (std::size_t v = 0; v < d; ++v) {
        if (v != red.removed) vdims.push_back(spec.vertex_dims[v]);
    }
    vdims[red.vertex_map[red.absorbed_into]] *= spec.vertex_dims[red.removed];
    red.spec = ProblemSpec{NetworkGraph(d - 1, std::move(edges)), RankTuple(std::move(rdims)), std::move(vdims)};
    red.groups.assign(d - 1, {});
    for (std::size_t v = 0; v < d; ++v) red.groups[red.vertex_map[v]].push_back(v);
    return red;
}

TNState merge_leaf(const TNState& state, const Reduction& red) {
    const auto& g = state.graph();
    const std::size_t i = red.removed;
    const std::size_t j = red.absorbed_into;
    const auto j_edges = g.incident_edges(j);
    const std::size_t pos_e = position_in(j_edges, red.removed_edge);
    const std::pair<std::size_t, std::size_t> pairs[] = {{0, pos_e}};
    // Modes: [n_i, other edges of j..., n_j].
    const Tensor c = contract_pairs(state.factor(i), state.factor(j), pairs);
    const std::size_t k = j_edges.size() - 1;
    std::vector<std::size_t> perm;
    for (std::size_t t = 1; t <= k; ++t) perm.push_back(t);
    if (i < j) {
        perm.push_back(0);
        perm.push_back(k + 1);
    } else {
        perm.push_back(k + 1);
        perm.push_back(0);
    }
    std::vector<Tensor> factors(red.spec.order());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (v == i || v == j) continue;
        factors[red.vertex_map[v]] = state.factor(v);
    }
    const std::size_t w = red.vertex_map[j];
    factors[w] = permute(c, perm).reshape(red.spec.factor_shape(w));
    return TNState(red.spec, std::move(factors));
}

TNState split_leaf(const TNState& reduced, const ProblemSpec& original, const Reduction& red) {
    const auto& g = original.graph;
    const std::size_t i = red.removed;
    const std::size_t j = red.absorbed_into;
    const std::size_t ni = original.vertex_dims[i];
    const std::size_t nj = original.vertex_dims[j];
    const std::size_t re = original.edge_dims[red.removed_edge];
    if (ni > re) throw GraphError("split_leaf needs n_i <= r_e");
    const auto j_edges = g.incident_edges(j);
    const std::size_t pos_e = position_in(j_edges, red.removed_edge);
    const std::size_t k = j_edges.size() - 1;
    const std::size_t w = red.vertex_map[j];
    const ScalarMode mode = reduced.mode();

    Shape split = reduced.factor(w).dims();
    split.pop_back();
    if (i < j) {
        split.push_back(ni);
        split.push_back(nj);
    } else {
        split.push_back(nj);
        split.push_back(ni);
    }
    Tensor r = reduced.factor(w).reshape(split);
    if (i > j) {
        std::vector<std::size_t> perm(k + 2);
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[k], perm[k + 1]);
        r = permute(r, perm);
    }
    // r: [other edges..., n_i, n_j]; pad n_i up to r_e and move it to the edge slot.
    const Tensor pad = padding_matrix(re, ni, mode);
    const std::pair<std::size_t, std::size_t> pairs[] = {{1, k}};
    const Tensor padded = contract_pairs(pad, r, pairs);  // [r_e, other edges..., n_j]
    std::vector<std::size_t> perm(k + 2);
    for (std::size_t t = 0; t <= k; ++t) perm[t] = t == pos_e ? 0 : (t < pos_e ? t + 1 : t);
    perm[k + 1] = k + 1;

    std::vector<Tensor> factors(original.order());
    for (std::size_t v = 0; v < original.order(); ++v) {
        if (v == i || v == j) continue;
        factors[v] = reduced.factor(red.vertex_map[v]);
    }
    factors[j] = permute(padded, perm);
    factors[i] = pad;
    return TNState(original, std::move(factors));
}

Tensor merge_modes(const Tensor& t, const ProblemSpec& original, const Reduction& red) {
    if (t.dims() != Shape(original.vertex_dims.begin(), original.vertex_dims.end())) {
        throw ShapeError("tensor does not match the original spec");
    }
    const auto perm = grouped_order(red);
    return permute(t, perm).reshape(Shape(red.spec.vertex_dims.begin(), red.spec.vertex_dims.end()));
}

Tensor expand_merged(const Tensor& t, const ProblemSpec& original, const Reduction& red) {
    if (t.dims() != Shape(red.spec.vertex_dims.begin(), red.spec.vertex_dims.end())) {
        throw ShapeError("tensor does not match the reduced spec");
    }
    const auto perm = grouped_order(red);
    Shape split;
    for (auto v : perm) split.push_back(original.vertex_dims[v]);
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
    return permute(t.reshape(split), inv);
}

UnitEdgeRemoval remove_unit_edges(const ProblemSpec& spec) {
    spec.validate();
    const auto& g = spec.graph;
    std::vector<std::size_t> degree(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) degree[v] = g.degree(v);
    std::vector<bool> keep(g.edge_count(), true);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (spec.edge_dims[e] != 1) continue;
        const Edge& x = g.edge(e);
        if (degree[x.u] == 1 || degree[x.v] == 1) {
            throw GraphError("removing unit edge " + std::to_string(e + 1) + " would isolate a vertex");
        }
        --degree[x.u];
        --degree[x.v];
        keep[e] = false;
    }
    UnitEdgeRemoval out;
    std::vector<Edge> edges;
    std::vector<std::size_t> dims;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (!keep[e]) {
            out.edge_map.emplace_back(std::nullopt);
            continue;
        }
        out.edge_map.emplace_back(edges.size());
        edges.push_back(g.edge(e));
        dims.push_back(spec.edge_dims[e]);
    }
    out.spec = ProblemSpec{NetworkGraph(g.vertex_count(), std::move(edges)), RankTuple(std::move(dims)), spec.vertex_dims};
    return out;
}

TNState drop_unit_edges(const TNState& state, const UnitEdgeRemoval& removal) {
    std::vector<Tensor> factors;
    for (std::size_t v = 0; v < state.spec().order(); ++v) {
        factors.push_back(state.factor(v).reshape(removal.spec.factor_shape(v)));
    }
    return TNState(removal.spec, std::move(factors));
}

TNState restore_unit_edges(const TNState& reduced, const ProblemSpec& original, const UnitEdgeRemoval& removal) {
    if (!(reduced.spec() == removal.spec)) throw GraphError("state does not match the reduced spec");
    std::vector<Tensor> factors;
    for (std::size_t v = 0; v < original.order(); ++v) {
        factors.push_back(reduced.factor(v).reshape(original.factor_shape(v)));
    }
    return TNState(original, std::move(factors));
}

}  // namespace tnrank
