#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tnrank/network.hpp"

namespace tnrank {

/// How to read the index of the second summand in the tensor-train
/// dimension formula: r_{d-j-1} as printed, or the alternative r_{d-j+1}.
enum class TTReading { printed, alternative };

/// dim TNS(P_d; r; n) by the closed formula with r_0 = r_d = 1 and the
/// odd/even convention for the middle term. Throws std::domain_error unless
/// the spec is critical or supercritical, or check_hypothesis is false.
std::int64_t dim_tt_formula(const RankTuple& r, const std::vector<std::size_t>& n,
                            TTReading reading = TTReading::printed, bool check_hypothesis = true);

/// dim TNS(C_d; r; n) = sum_i m_i n_i - sum_e r_e^2 + 1, with m_i the product
/// of the two edge dims at vertex i of cycle_graph(d). Same precondition.
std::int64_t dim_mps_formula(const RankTuple& r, const std::vector<std::size_t>& n);

/// sum r_i (n_i - r_i) + prod r_i. Throws std::domain_error if some r_i > n_i.
std::int64_t dim_subspace_formula(const std::vector<std::size_t>& r, const std::vector<std::size_t>& n);

struct JacobianEstimate {
    /// Maximum numerical rank over the seeds.
    std::size_t dimension = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::size_t> ranks;
    /// sigma_rank / sigma_{rank+1} per seed (+inf when rank is full).
    std::vector<double> gaps;
    bool stable() const;
};

/// Numerical rank of the Jacobian of the contraction map at random float
/// points; singular values above 1e-8 sigma_1 count.
JacobianEstimate jacobian_dimension(const ProblemSpec& spec, const std::vector<std::uint64_t>& seeds);

struct FormulaValue {
    std::string name;
    double value = 0.0;
};

struct DimReport {
    std::string label;
    std::optional<ProblemSpec> spec;
    /// Primary closed-form value; nullopt if the formula does not apply.
    std::optional<double> formula_value;
    /// Alternative readings and related closed forms.
    std::vector<FormulaValue> variants;
    std::optional<JacobianEstimate> jacobian;
    /// Names of the formula values equal to the Jacobian estimate.
    std::vector<std::string> matches;
    /// formula_value equals the Jacobian estimate (false when either is absent).
    bool agreement = false;
};

/// Report for a P_d or C_d spec (by graph classification): formula values,
/// Jacobian estimate and which values it matches.
DimReport dimension_report(const ProblemSpec& spec, const std::vector<std::uint64_t>& seeds);

/// Parameter counts for the n x n matrix multiplication tensor, n in {2, 3}:
/// "C3", "P3", "Sub", "sigma" (lower bound), and "conclusion" whose
/// variants hold 1/0 for each comparison.
std::vector<DimReport> parameter_report(std::size_t n, const std::vector<std::uint64_t>& seeds);

/// 3 n^2 - 2 sqrt(2) n^{3/2} - 3 n.
double tensor_rank_lower_bound(double n);
/// 9n^4 - 6 sqrt(2) n^{7/2} - 9n^3 - 6n^2 + 4 sqrt(2) n^{3/2} + 6n - 1.
double secant_dimension_bound(double n);

}  // namespace tnrank
