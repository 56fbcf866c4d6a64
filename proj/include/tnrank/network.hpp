#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tnrank/graph.hpp"
#include "tnrank/tensor.hpp"

namespace tnrank {

/// The symbol (G; r_1..r_c; n_1..n_d).
struct ProblemSpec {
    NetworkGraph graph;
    RankTuple edge_dims;
    std::vector<std::size_t> vertex_dims;

    /// Edge dims taken from the graph weights.
    static ProblemSpec from_graph(NetworkGraph g, std::vector<std::size_t> vertex_dims);

    /// Throws GraphError on inconsistent lengths or zero extents.
    void validate() const;

    std::size_t order() const { return vertex_dims.size(); }
    /// Sum over vertices of n_i times the incident edge dims.
    std::size_t parameter_count() const;
    /// Product of n_i.
    std::size_t ambient_dimension() const;
    /// [r_e for incident e ascending] ++ [n_v].
    Shape factor_shape(std::size_t v) const;

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// A graph plus one factor per vertex. Factor layout: incident edges in
/// ascending edge id, then the physical mode.
class TNState {
public:
    TNState() = default;
    /// Validates shapes and modes. The graph must be normalized; isolated
    /// vertices are rejected unless the graph has a single vertex.
    TNState(ProblemSpec spec, std::vector<Tensor> factors);

    const ProblemSpec& spec() const { return spec_; }
    const NetworkGraph& graph() const { return spec_.graph; }
    const std::vector<Tensor>& factors() const { return factors_; }
    const Tensor& factor(std::size_t v) const { return factors_.at(v); }
    ScalarMode mode() const;

private:
    ProblemSpec spec_;
    std::vector<Tensor> factors_;
};

/// Sum of rank-one terms; terms[p][i] is the slot-i vector of term p.
struct CPDecomposition {
    Shape dims;
    ScalarMode mode = ScalarMode::exact;
    std::vector<std::vector<Tensor>> terms;

    std::size_t order() const { return dims.size(); }
    std::size_t rank() const { return terms.size(); }
    void validate() const;
    Tensor to_tensor() const;
};

/// kappa_G: result mode i is the physical mode of vertex i. Greedy schedule:
/// contract the connected pair of partial tensors with the smallest result,
/// ties to the lowest vertex ids; disconnected pieces are joined by outer
/// products at the end.
Tensor contract_network(const TNState& state);

/// I.i.d. standard complex Gaussian factors (float) or small Gaussian
/// integers in [-3, 3] + [-3, 3]i (exact). Deterministic in the seed.
TNState random_state(const ProblemSpec& spec, std::uint64_t seed, ScalarMode mode = ScalarMode::floating);

/// Edge dims all equal rank(cp); factor i = sum_p (e_p on every incident
/// edge) (x) v_p^(i). A rank-0 CP maps to unit edges with zero factors.
TNState universal_embed(const CPDecomposition& cp, const NetworkGraph& g);

enum class Criticality { subcritical, critical, supercritical, mixed };
std::string_view to_string(Criticality c);

struct CriticalityReport {
    std::vector<Criticality> vertices;  // never `mixed`
    Criticality overall = Criticality::mixed;
};

CriticalityReport criticality(const ProblemSpec& spec);

/// Result of deleting a degree-one vertex `removed` and merging its physical
/// space into its neighbour `absorbed_into` (both labels of the input spec).
struct Reduction {
    ProblemSpec spec;
    std::size_t removed = 0;
    std::size_t absorbed_into = 0;
    std::size_t removed_edge = 0;
    /// Input vertex -> reduced vertex (removed maps to its neighbour's image).
    std::vector<std::size_t> vertex_map;
    /// Per reduced vertex, the input vertices it covers (ascending). A merged
    /// physical index is row-major over this list.
    std::vector<std::vector<std::size_t>> groups;
};

/// Picks `vertex`, or else the lowest-id degree-one vertex with n_i <= r_e.
/// Throws GraphError if none is eligible.
Reduction reduce_degree_one(const ProblemSpec& spec, std::optional<std::size_t> vertex = std::nullopt);

/// State for the reduced spec from a state of the input spec (the leaf
/// factor is absorbed into its neighbour).
TNState merge_leaf(const TNState& state, const Reduction& red);
/// State for the input spec from a state of the reduced spec; the leaf gets
/// an identity-padded factor (needs n_i <= r_e).
TNState split_leaf(const TNState& reduced, const ProblemSpec& original, const Reduction& red);

/// Tensor over the input vertices -> tensor over the reduced vertices, and back.
Tensor merge_modes(const Tensor& t, const ProblemSpec& original, const Reduction& red);
Tensor expand_merged(const Tensor& t, const ProblemSpec& original, const Reduction& red);

struct UnitEdgeRemoval {
    ProblemSpec spec;
    /// Input edge id -> output edge id, nullopt for removed edges.
    std::vector<std::optional<std::size_t>> edge_map;
};

/// Deletes every edge with r_e = 1 in id order. Throws GraphError if a
/// removal would leave a vertex without edges.
UnitEdgeRemoval remove_unit_edges(const ProblemSpec& spec);
TNState drop_unit_edges(const TNState& state, const UnitEdgeRemoval& removal);
/// Inverse of drop_unit_edges: re-inserts extent-1 bond modes.
TNState restore_unit_edges(const TNState& reduced, const ProblemSpec& original, const UnitEdgeRemoval& removal);

}  // namespace tnrank
