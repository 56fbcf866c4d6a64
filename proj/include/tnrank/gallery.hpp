#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tnrank/network.hpp"
#include "tnrank/tensor.hpp"

namespace tnrank {

/// Exact fixtures. All tensors are exact mode; qubit spaces use v1 = e_0, v2 = e_1.

struct QubitState {
    Tensor tensor;
    CPDecomposition cp;
    TNState path;                 // on path_graph(d), edge dims 2
    std::optional<TNState> cycle; // on cycle_graph(d), edge dims 2 (d >= 3)
};

/// Entries 1 where exactly one coordinate is v2. d >= 3.
QubitState w_state(std::size_t d);
/// v1^d + v2^d. d >= 2; the cycle state D^d needs d >= 3.
QubitState ghz_state(std::size_t d);

struct StrassenTensor {
    Tensor tensor;
    CPDecomposition cp;
    TNState cycle;
};

/// Triangle with edges {0,2}, {0,1}, {1,2}: edge dims (m, n, p) then match the
/// factors A in E(m) F(n), B in F(n) G(p), C in E(m) G(p).
NetworkGraph strassen_cycle_graph();

/// Structure tensor of (m x n) times (n x p), modes (U*, V*, W) of sizes
/// mn, np, mp; u_{ik} -> i*n + k, v_{kj} -> k*p + j, w_{ij} -> i*p + j.
StrassenTensor strassen(std::size_t m, std::size_t n, std::size_t p);

struct StarState {
    Tensor tensor;
    TNState star;  // on star_graph(n), center 0, edge dims n
};

/// (1/n!) sum over permutations of v_s(1) (x) ... (x) v_s(n); n vectors of length n, exact.
StarState decomposable_sym(const std::vector<Tensor>& vectors);
/// As decomposable_sym with the sign of each permutation.
StarState decomposable_skew(const std::vector<Tensor>& vectors);

/// e_1^{p_1} o ... o e_n^{p_n} over C^n with the 1/d! convention, d = sum p_i >= 2.
Tensor monomial_tensor(const std::vector<std::size_t>& exponents);

/// Order-d tensor on (C^{n x n})^d, E_ij at index i*n + j:
/// sum_{i,j} (E_ij (x) E_jj + E_ii (x) E_ij) (x) (chain of d-2 matrix units
/// from j to i, summed over the d-3 inner indices). d >= 3, n >= 2.
Tensor border_example(std::size_t d, std::size_t n);

}  // namespace tnrank
