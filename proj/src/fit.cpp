#include "tnrank/fit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "random.hpp"
#include "threads.hpp"
#include "tnrank/eigen_bridge.hpp"

namespace tnrank {

namespace {

std::uint64_t restart_seed(std::uint64_t seed, std::size_t idx) {
    return detail::splitmix64(detail::splitmix64(seed) ^ static_cast<std::uint64_t>(idx));
}

// Mode v moved last, everything else in order, as a (rest x extent_v) matrix.
ComplexMatrix unfold_last(const Tensor& t, std::size_t v) {
    std::vector<std::size_t> perm;
    for (std::size_t k = 0; k < t.order(); ++k) {
        if (k != v) perm.push_back(k);
    }
    perm.push_back(v);
    const std::size_t cols = t.dim(v);
    return to_eigen(permute(t, perm).reshape({t.size() / cols, cols}));
}

class Sweeper {
public:
    Sweeper(const ProblemSpec& spec, const ComplexMatrix* targets, double norm, const FitOptions& opts)
        : spec_(spec), targets_(targets), norm_(norm), opts_(opts) {}

    // Replaces factor v by the least-squares optimum; returns the new relative residual.
    double update(std::vector<Tensor>& factors, std::size_t v, RestartTrace& trace) const {
        const std::size_t bonds = incident_weight_product(spec_.graph, spec_.edge_dims, v);
        ProblemSpec s = spec_;
        s.vertex_dims[v] = bonds;
        auto env_factors = factors;
        env_factors[v] = Tensor::identity(bonds, ScalarMode::floating).reshape(s.factor_shape(v));
        const ComplexMatrix a = unfold_last(contract_network(TNState(std::move(s), std::move(env_factors))), v);
        const ComplexMatrix& b = targets_[v];

        Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
        ComplexMatrix x;
        if (opts_.ridge > 0.0 && cod.rank() < a.cols()) {
            const auto n = a.cols();
            ComplexMatrix aug(a.rows() + n, n);
            aug << a, std::sqrt(opts_.ridge) * ComplexMatrix::Identity(n, n);
            ComplexMatrix rhs = ComplexMatrix::Zero(a.rows() + n, b.cols());
            rhs.topRows(a.rows()) = b;
            x = aug.colPivHouseholderQr().solve(rhs);
            ++trace.ridge_solves;
        } else {
            x = cod.solve(b);
        }
        factors[v] = from_eigen(x).reshape(spec_.factor_shape(v));
        return (a * x - b).norm() / norm_;
    }

private:
    const ProblemSpec& spec_;
    const ComplexMatrix* targets_;
    double norm_;
    const FitOptions& opts_;
};

struct RestartOutcome {
    std::vector<Tensor> factors;
    double residual = 0.0;
    RestartTrace trace;
};

RestartOutcome run_restart(const Tensor& t, const ProblemSpec& spec, const std::vector<ComplexMatrix>& targets,
                           const FitOptions& opts, std::uint64_t seed) {
    RestartOutcome out;
    out.trace.seed = seed;
    const double norm = t.frobenius_norm();
    auto init = random_state(spec, seed, ScalarMode::floating);
    const double c = contract_network(init).frobenius_norm();
    const double factor_scale = c > 0.0 ? std::pow(1.0 / c, 1.0 / static_cast<double>(spec.order())) : 1.0;
    for (const auto& f : init.factors()) out.factors.push_back(scale(f, Complex(factor_scale, 0.0)));
    const TNState start(spec, out.factors);
    out.residual = (contract_network(start) - t).frobenius_norm() / norm;
    out.trace.residuals.push_back(out.residual);

    const Sweeper sweeper(spec, targets.data(), norm, opts);
    for (std::size_t it = 0; it < opts.max_iters; ++it) {
        double r = out.residual;
        for (std::size_t v = 0; v < spec.order(); ++v) r = sweeper.update(out.factors, v, out.trace);
        const double change = std::abs(out.residual - r);
        out.residual = r;
        out.trace.residuals.push_back(r);
        ++out.trace.sweeps;
        if (opts.target && r <= *opts.target) break;
        if (change < opts.convergence_tol) {
            out.trace.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace

void FitOptions::validate() const {
    if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
    if (!(convergence_tol >= 0.0)) throw std::invalid_argument("convergence_tol must be nonnegative");
    if (!(ridge >= 0.0)) throw std::invalid_argument("ridge must be nonnegative");
    if (target && !(*target >= 0.0)) throw std::invalid_argument("target must be nonnegative");
}

double max_factor_magnitude(const TNState& state) {
    const auto& fs = state.factors();
    double log_mean = 0.0;
    for (const auto& f : fs) {
        const double n = f.frobenius_norm();
        if (n == 0.0) return 0.0;
        log_mean += std::log(n);
    }
    const double mean = std::exp(log_mean / static_cast<double>(fs.size()));
    double out = 0.0;
    for (const auto& f : fs) out = std::max(out, f.max_abs() * mean / f.frobenius_norm());
    return out;
}

double cancellation_ratio(const TNState& state) {
    double prod = 1.0;
    for (const auto& f : state.factors()) prod *= f.frobenius_norm();
    const double n = contract_network(state).frobenius_norm();
    return n > 0.0 ? prod / n : std::numeric_limits<double>::infinity();
}

FitResult als_fit(const Tensor& target, const ProblemSpec& spec, const FitOptions& opts) {
    opts.validate();
    spec.validate();
    if (!spec.graph.is_connected()) throw GraphError("fit needs a connected graph");
    const Tensor t = target.to_float();
    if (t.dims() != Shape(spec.vertex_dims.begin(), spec.vertex_dims.end())) {
        throw ShapeError("target dims differ from the spec's vertex dims");
    }
    if (t.is_zero()) throw std::invalid_argument("target tensor is zero");

    std::vector<ComplexMatrix> targets;
    for (std::size_t v = 0; v < spec.order(); ++v) targets.push_back(unfold_last(t, v));

    std::vector<RestartOutcome> outcomes(opts.restarts);
    std::vector<std::exception_ptr> errors(opts.restarts);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < opts.restarts;) {
            try {
                outcomes[i] = run_restart(t, spec, targets, opts, restart_seed(opts.seed, i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n_threads = std::min(detail::thread_cap(opts.threads), opts.restarts);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        if (outcomes[i].residual < outcomes[best].residual) best = i;
    }
    FitResult res;
    res.best_restart = best;
    res.relative_residual = outcomes[best].residual;
    res.best_state = TNState(spec, std::move(outcomes[best].factors));
    res.max_factor_magnitude = max_factor_magnitude(res.best_state);
    for (auto& o : outcomes) res.restarts.push_back(std::move(o.trace));
    return res;
}

BorderReport border_probe(const Tensor& t, const ProblemSpec& spec, const std::vector<double>& targets,
                          const FitOptions& base, std::size_t max_budget) {
    for (std::size_t k = 0; k < targets.size(); ++k) {
        if (!(targets[k] > 0.0) || (k > 0 && !(targets[k] < targets[k - 1]))) {
            throw std::invalid_argument("targets must be positive and strictly decreasing");
        }
    }
    BorderReport rep;
    for (double goal : targets) {
        FitOptions opts = base;
        opts.target = goal;
        BorderStep step;
        step.target = goal;
        for (std::size_t budget = std::max<std::size_t>(base.max_iters, 1);; budget *= 4) {
            opts.max_iters = std::min(budget, max_budget);
            const auto fit = als_fit(t, spec, opts);
            step.achieved = fit.relative_residual;
            step.max_factor_magnitude = fit.max_factor_magnitude;
            step.cancellation_ratio = cancellation_ratio(fit.best_state);
            step.budget = opts.max_iters;
            step.met = fit.relative_residual <= goal;
            if (step.met || opts.max_iters >= max_budget) break;
        }
        rep.steps.push_back(step);
    }
    rep.all_met = !rep.steps.empty() &&
                  std::all_of(rep.steps.begin(), rep.steps.end(), [](const BorderStep& s) { return s.met; });
    rep.magnitude_grows = rep.steps.size() >= 2 && rep.steps.back().max_factor_magnitude > rep.steps.front().max_factor_magnitude;
    return rep;
}

}  // namespace tnrank
