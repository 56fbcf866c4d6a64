#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tnrank/tensor.hpp"

namespace tnrank {

/// Outcome of a rank decision. In exact mode the decision is certain:
/// gap_ratio is +inf and near_boundary is false.
struct RankDecision {
    std::size_t rank = 0;
    /// Absolute cutoff used in float mode (tol * sigma_1).
    double threshold = 0.0;
    /// sigma_rank / sigma_{rank+1}; +inf when there is no next singular value or it vanishes.
    double gap_ratio = 0.0;
    /// True when sigma_rank or sigma_{rank+1} sits within a factor 100 of the cutoff.
    bool near_boundary = false;
    std::vector<double> singular_values;
};

/// max(rows, cols) * eps * 8.
double default_rank_tolerance(std::size_t rows, std::size_t cols);

/// Exact mode: rank over Q(i) by fraction-free elimination. Float mode: number
/// of singular values above tol * sigma_1 (tol defaults to default_rank_tolerance).
std::size_t matrix_rank(const Tensor& m, std::optional<double> tol = std::nullopt);
RankDecision rank_decision(const Tensor& m, std::optional<double> tol = std::nullopt);

/// m = left * right with left rows x r and right r x cols, r = rank(m).
///
/// Exact: left holds the pivot columns of m (pivots chosen left to right,
/// lowest row first), right the nonzero rows of the reduced row echelon form.
/// Float: left = U_r (orthonormal columns), right = Sigma_r V_r^H.
struct RankFactorization {
    Tensor left;
    Tensor right;
    std::vector<std::size_t> pivot_columns;  // exact mode only
    RankDecision decision;
};

RankFactorization rank_factorize(const Tensor& m, std::optional<double> tol = std::nullopt);

/// Reduced row echelon form (nonzero rows only) and its pivot columns, exact mode.
std::pair<Tensor, std::vector<std::size_t>> reduced_row_echelon(const Tensor& m);

}  // namespace tnrank
