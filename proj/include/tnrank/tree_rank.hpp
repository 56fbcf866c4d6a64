#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tnrank/graph.hpp"
#include "tnrank/linalg.hpp"
#include "tnrank/network.hpp"
#include "tnrank/tensor.hpp"

namespace tnrank {

/// Flattening data behind one coordinate of a tree rank.
struct EdgeRank {
    std::size_t edge = 0;
    /// Row modes: the component containing the edge's first endpoint.
    std::vector<std::size_t> row_modes;
    std::size_t rows = 0;
    std::size_t cols = 0;
    RankDecision decision;
};

struct TreeRankReport {
    RankTuple rank;
    std::vector<EdgeRank> edges;
    /// True if any float-mode decision sat near the tolerance boundary.
    bool ill_conditioned = false;
};

/// G-rank of T for a tree G: r_e = rank of the flattening along the edge
/// split. The zero tensor gives all zeros. Throws GraphError if G is not a
/// normalized tree, ShapeError if the order differs from the vertex count.
RankTuple ttns_rank(const Tensor& t, const NetworkGraph& g, std::optional<double> tol = std::nullopt);
TreeRankReport ttns_rank_report(const Tensor& t, const NetworkGraph& g, std::optional<double> tol = std::nullopt);

/// ttns_rank(T, G) <= r componentwise.
bool tree_membership(const Tensor& t, const NetworkGraph& g, const RankTuple& r,
                     std::optional<double> tol = std::nullopt);

/// Leaf-peeling decomposition (lowest-id leaf first) with edge dims equal to
/// the tree rank. The zero tensor yields unit edges and zero factors.
TNState ttns_decompose(const Tensor& t, const NetworkGraph& g, std::optional<double> tol = std::nullopt);

/// Single-mode flattening ranks.
std::vector<std::size_t> multilinear_rank(const Tensor& t, std::optional<double> tol = std::nullopt);

/// multilinear_rank(T) == dims(T).
bool is_nondegenerate(const Tensor& t, std::optional<double> tol = std::nullopt);

/// Necessary condition for r to be a G-rank of a nondegenerate T: the
/// product of incident r_e is at least n_i at every vertex. Throws
/// std::invalid_argument for a degenerate T.
bool rank_bound_check(const Tensor& t, const NetworkGraph& g, const RankTuple& r,
                      std::optional<double> tol = std::nullopt);

}  // namespace tnrank
