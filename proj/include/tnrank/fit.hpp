#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tnrank/network.hpp"

namespace tnrank {

struct FitOptions {
    std::size_t max_iters = 500;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    /// Stop a restart once the relative residual changes by less than this.
    double convergence_tol = 1e-12;
    /// Ridge weight, used only for rank-deficient environments.
    double ridge = 0.0;
    /// Stop a restart as soon as the residual drops to this value.
    std::optional<double> target;
    /// Worker threads; 0 means TNRANK_THREADS, else the hardware count.
    std::size_t threads = 0;

    /// Throws std::invalid_argument on negative values or zero restarts.
    void validate() const;
};

struct RestartTrace {
    std::uint64_t seed = 0;
    /// Relative residual at initialization and after every sweep.
    std::vector<double> residuals;
    std::size_t sweeps = 0;
    /// Number of factor updates that fell back to the ridge solve.
    std::size_t ridge_solves = 0;
    bool converged = false;
};

struct FitResult {
    TNState best_state;
    double relative_residual = 0.0;
    std::size_t best_restart = 0;
    std::vector<RestartTrace> restarts;
    double max_factor_magnitude = 0.0;
};

/// Largest entry modulus after rescaling every factor to the geometric mean
/// of the factor norms (the contraction is unchanged).
double max_factor_magnitude(const TNState& state);

/// Product of the factor norms over the norm of the contraction; large
/// values mean the terms of the contraction cancel.
double cancellation_ratio(const TNState& state);

/// Alternating least squares over vertices 0..d-1. Each restart starts from a
/// Gaussian state scaled to a unit-norm contraction. Restarts run in
/// parallel; the best is the smallest residual, ties to the lowest index.
FitResult als_fit(const Tensor& t, const ProblemSpec& spec, const FitOptions& opts = {});

struct BorderStep {
    double target = 0.0;
    double achieved = 0.0;
    double max_factor_magnitude = 0.0;
    double cancellation_ratio = 0.0;
    std::size_t budget = 0;
    bool met = false;
};

struct BorderReport {
    std::vector<BorderStep> steps;
    bool all_met = false;
    /// max_factor_magnitude of the last step exceeds that of the first.
    bool magnitude_grows = false;
};

/// For each target (strictly decreasing, positive) runs als_fit with
/// max_iters = base.max_iters, 4x, 16x, ... up to max_budget until the
/// target is met.
BorderReport border_probe(const Tensor& t, const ProblemSpec& spec, const std::vector<double>& targets,
                          const FitOptions& base = {}, std::size_t max_budget = 32000);

}  // namespace tnrank
