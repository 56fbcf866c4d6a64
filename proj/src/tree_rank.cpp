#include "tnrank/tree_rank.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace tnrank {

namespace {

void require_tree(const Tensor& t, const NetworkGraph& g) {
    if (!g.is_normalized()) throw GraphError("graph must be normalized (no loops or parallel edges)");
    if (g.vertex_count() != t.order()) {
        throw ShapeError("tensor of order " + std::to_string(t.order()) + " on a graph with " +
                         std::to_string(g.vertex_count()) + " vertices");
    }
    const auto kind = classify(g);
    if (kind.kind == GraphKind::disconnected) throw GraphError("graph is disconnected");
    if (!kind.is_tree()) throw GraphError("cyclic graph: use fit");
}

// Permutation taking a factor with the given mode labels to the layout
// [incident edges ascending] ++ [physical].
std::vector<std::size_t> layout_permutation(const std::vector<long>& labels) {
    std::vector<std::size_t> perm(labels.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        const long x = labels[a], y = labels[b];
        if ((x < 0) != (y < 0)) return y < 0;
        return x < y;
    });
    return perm;
}

}  // namespace

TreeRankReport ttns_rank_report(const Tensor& t, const NetworkGraph& g, std::optional<double> tol) {
    require_tree(t, g);
    TreeRankReport rep;
    std::vector<std::size_t> r;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        EdgeRank er;
        er.edge = e;
        er.row_modes = edge_split(g, e).first;
        const Tensor m = flatten(t, er.row_modes);
        er.rows = m.dim(0);
        er.cols = m.dim(1);
        er.decision = rank_decision(m, tol);
        rep.ill_conditioned = rep.ill_conditioned || er.decision.near_boundary;
        r.push_back(er.decision.rank);
        rep.edges.push_back(std::move(er));
    }
    rep.rank = RankTuple(std::move(r));
    return rep;
}

RankTuple ttns_rank(const Tensor& t, const NetworkGraph& g, std::optional<double> tol) {
    return ttns_rank_report(t, g, tol).rank;
}

bool tree_membership(const Tensor& t, const NetworkGraph& g, const RankTuple& r, std::optional<double> tol) {
    if (r.size() != g.edge_count()) throw GraphError("rank tuple length differs from edge count");
    return ttns_rank(t, g, tol).leq(r);
}

TNState ttns_decompose(const Tensor& t, const NetworkGraph& g, std::optional<double> tol) {
    require_tree(t, g);
    const std::size_t d = g.vertex_count();
    ProblemSpec spec{g, RankTuple(std::vector<std::size_t>(g.edge_count(), 1)), Shape(t.dims())};

    if (t.is_zero()) {
        std::vector<Tensor> zeros;
        for (std::size_t v = 0; v < d; ++v) zeros.push_back(Tensor::zeros(spec.factor_shape(v), t.mode()));
        return TNState(std::move(spec), std::move(zeros));
    }

    std::vector<Tensor> factors(d);
    std::vector<bool> peeled(d, false);
    std::vector<std::size_t> degree(d);
    for (std::size_t v = 0; v < d; ++v) degree[v] = g.degree(v);

    Tensor core = t;
    std::vector<long> labels(d);
    for (std::size_t v = 0; v < d; ++v) labels[v] = -static_cast<long>(v) - 1;
    // Vertex each core mode is attached to.
    std::vector<std::size_t> owner(d);
    std::iota(owner.begin(), owner.end(), 0);

    for (std::size_t step = 0; step + 1 < d; ++step) {
        std::size_t i = 0;
        while (peeled[i] || degree[i] != 1) ++i;
        std::size_t e = 0, j = 0;
        for (auto id : g.incident_edges(i)) {
            if (!peeled[g.other_end(id, i)]) {
                e = id;
                j = g.other_end(id, i);
            }
        }
        std::vector<std::size_t> rows, cols;
        for (std::size_t k = 0; k < labels.size(); ++k) (owner[k] == i ? rows : cols).push_back(k);
        const auto f = rank_factorize(flatten(core, rows), tol);
        const std::size_t r = f.decision.rank;
        spec.edge_dims[e] = r;

        Shape leaf_dims;
        std::vector<long> leaf_labels;
        for (auto k : rows) {
            leaf_dims.push_back(core.dim(k));
            leaf_labels.push_back(labels[k]);
        }
        leaf_dims.push_back(r);
        leaf_labels.push_back(static_cast<long>(e));
        factors[i] = permute(f.left.reshape(leaf_dims), layout_permutation(leaf_labels));

        Shape core_dims{r};
        std::vector<long> core_labels{static_cast<long>(e)};
        std::vector<std::size_t> core_owner{j};
        for (auto k : cols) {
            core_dims.push_back(core.dim(k));
            core_labels.push_back(labels[k]);
            core_owner.push_back(owner[k]);
        }
        core = f.right.reshape(core_dims);
        labels = std::move(core_labels);
        owner = std::move(core_owner);
        peeled[i] = true;
        --degree[j];
    }
    std::size_t last = 0;
    while (peeled[last]) ++last;
    factors[last] = permute(core, layout_permutation(labels));
    return TNState(std::move(spec), std::move(factors));
}

std::vector<std::size_t> multilinear_rank(const Tensor& t, std::optional<double> tol) {
    if (t.order() == 1) return {t.is_zero() ? 0u : 1u};
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.order(); ++i) {
        const std::size_t rows[] = {i};
        out.push_back(matrix_rank(flatten(t, rows), tol));
    }
    return out;
}

bool is_nondegenerate(const Tensor& t, std::optional<double> tol) {
    const auto m = multilinear_rank(t, tol);
    return std::equal(m.begin(), m.end(), t.dims().begin(), t.dims().end());
}

bool rank_bound_check(const Tensor& t, const NetworkGraph& g, const RankTuple& r, std::optional<double> tol) {
    if (g.vertex_count() != t.order()) throw ShapeError("graph and tensor orders differ");
    if (r.size() != g.edge_count()) throw GraphError("rank tuple length differs from edge count");
    if (!is_nondegenerate(t, tol)) throw std::invalid_argument("rank_bound_check needs a nondegenerate tensor");
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (incident_weight_product(g, r, v) < t.dim(v)) return false;
    }
    return true;
}

}  // namespace tnrank
