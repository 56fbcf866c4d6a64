#include "tnrank/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tnrank/eigen_bridge.hpp"

namespace tnrank {

namespace {

void require_not_subcritical(const ProblemSpec& spec) {
    const auto c = criticality(spec).overall;
    if (c != Criticality::critical && c != Criticality::supercritical) {
        throw std::domain_error("formula applies only to critical or supercritical specs (got " +
                                std::string(to_string(c)) + ")");
    }
}

std::int64_t as_int(std::size_t x) { return static_cast<std::int64_t>(x); }

// sum_i m_i n_i - sum_e r_e^2 + 1 using the incidence of the spec's own graph.
std::int64_t cycle_count(const ProblemSpec& spec) {
    std::int64_t total = 1;
    for (std::size_t v = 0; v < spec.order(); ++v) {
        total += static_cast<std::int64_t>(incident_weight_product(spec.graph, spec.edge_dims, v)) * as_int(spec.vertex_dims[v]);
    }
    for (auto r : spec.edge_dims) total -= as_int(r) * as_int(r);
    return total;
}

std::size_t ipow(std::size_t b, unsigned e) {
    std::size_t out = 1;
    while (e--) out *= b;
    return out;
}

}  // namespace

std::int64_t dim_tt_formula(const RankTuple& r, const std::vector<std::size_t>& n, TTReading reading,
                            bool check_hypothesis) {
    const std::size_t d = n.size();
    if (d < 2 || r.size() + 1 != d) throw std::invalid_argument("need d >= 2 dimensions and d-1 edge dims");
    if (check_hypothesis) require_not_subcritical(ProblemSpec{path_graph(d), r, n});
    std::vector<std::int64_t> rr(d + 1, 1);
    for (std::size_t i = 1; i < d; ++i) rr[i] = as_int(r[i - 1]);
    const std::int64_t mid = d % 2 == 0 ? rr[d / 2] : rr[(d - 1) / 2] * rr[(d + 1) / 2];
    std::int64_t total = mid * mid;
    for (std::size_t i = 1; i <= d; ++i) {
        const std::int64_t m = rr[i - 1] * rr[i];
        total += m * (as_int(n[i - 1]) - m);
    }
    for (std::size_t j = 1; j + 1 <= d / 2; ++j) {
        const std::size_t k = reading == TTReading::printed ? d - j - 1 : d - j + 1;
        total += rr[j + 1] * rr[j + 1] * (rr[j] * rr[j] - 1) + rr[k] * rr[k] * (rr[d - j] * rr[d - j] - 1);
    }
    return total;
}

std::int64_t dim_mps_formula(const RankTuple& r, const std::vector<std::size_t>& n) {
    const std::size_t d = n.size();
    if (d < 3 || r.size() != d) throw std::invalid_argument("need d >= 3 dimensions and d edge dims");
    const ProblemSpec spec{cycle_graph(d), r, n};
    require_not_subcritical(spec);
    return cycle_count(spec);
}

std::int64_t dim_subspace_formula(const std::vector<std::size_t>& r, const std::vector<std::size_t>& n) {
    if (r.size() != n.size()) throw std::invalid_argument("r and n differ in length");
    std::int64_t total = 0, prod = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] > n[i]) throw std::domain_error("subspace dimension exceeds the ambient dimension");
        total += as_int(r[i]) * (as_int(n[i]) - as_int(r[i]));
        prod *= as_int(r[i]);
    }
    return total + prod;
}

bool JacobianEstimate::stable() const {
    return !ranks.empty() && std::all_of(ranks.begin(), ranks.end(), [&](std::size_t r) { return r == ranks.front(); });
}

JacobianEstimate jacobian_dimension(const ProblemSpec& spec, const std::vector<std::uint64_t>& seeds) {
    spec.validate();
    if (seeds.empty()) throw std::invalid_argument("need at least one seed");
    const std::size_t d = spec.order();
    const Shape ambient(spec.vertex_dims.begin(), spec.vertex_dims.end());
    const std::size_t rows = shape_size(ambient);
    std::vector<std::size_t> bonds(d), col_offset(d + 1, 0);
    for (std::size_t v = 0; v < d; ++v) {
        bonds[v] = incident_weight_product(spec.graph, spec.edge_dims, v);
        col_offset[v + 1] = col_offset[v] + bonds[v] * spec.vertex_dims[v];
    }
    const std::size_t cols = col_offset[d];

    JacobianEstimate est;
    est.seeds = seeds;
    for (auto seed : seeds) {
        const TNState state = random_state(spec, seed, ScalarMode::floating);
        // env[v]: the network with factor v replaced by the identity on its bonds,
        // so mode v enumerates bond configurations.
        std::vector<Tensor> env(d);
        for (std::size_t v = 0; v < d; ++v) {
            ProblemSpec s = spec;
            s.vertex_dims[v] = bonds[v];
            auto factors = state.factors();
            Shape shape = s.factor_shape(v);
            factors[v] = Tensor::identity(bonds[v], ScalarMode::floating).reshape(shape);
            env[v] = contract_network(TNState(std::move(s), std::move(factors)));
        }
        ComplexMatrix jac = ComplexMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        std::vector<std::size_t> idx(d, 0);
        for (std::size_t row = 0; row < rows; ++row) {
            for (std::size_t v = 0; v < d; ++v) {
                const auto& e = env[v].floating();
                // Offset in env[v] of (idx with idx[v] = 0), and the stride of mode v.
                std::size_t base = 0, stride = 1;
                for (std::size_t k = 0; k < d; ++k) {
                    const std::size_t ext = k == v ? bonds[v] : spec.vertex_dims[k];
                    base = base * ext + (k == v ? 0 : idx[k]);
                }
                for (std::size_t k = v + 1; k < d; ++k) stride *= spec.vertex_dims[k];
                for (std::size_t b = 0; b < bonds[v]; ++b) {
                    jac(static_cast<Eigen::Index>(row),
                        static_cast<Eigen::Index>(col_offset[v] + b * spec.vertex_dims[v] + idx[v])) = e[base + b * stride];
                }
            }
            for (std::size_t k = d; k-- > 0;) {
                if (++idx[k] < spec.vertex_dims[k]) break;
                idx[k] = 0;
            }
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(jac);
        const auto& s = svd.singularValues();
        std::size_t r = 0;
        if (s.size() > 0 && s(0) > 0.0) {
            const double cut = 1e-8 * s(0);
            while (r < static_cast<std::size_t>(s.size()) && s(static_cast<Eigen::Index>(r)) > cut) ++r;
        }
        double gap = std::numeric_limits<double>::infinity();
        if (r > 0 && r < static_cast<std::size_t>(s.size()) && s(static_cast<Eigen::Index>(r)) > 0.0) {
            gap = s(static_cast<Eigen::Index>(r - 1)) / s(static_cast<Eigen::Index>(r));
        }
        est.ranks.push_back(r);
        est.gaps.push_back(gap);
        est.dimension = std::max(est.dimension, r);
    }
    return est;
}

namespace {

void settle(DimReport& rep) {
    if (!rep.jacobian) return;
    const auto j = static_cast<double>(rep.jacobian->dimension);
    for (const auto& f : rep.variants) {
        if (f.value == j) rep.matches.push_back(f.name);
    }
    rep.agreement = rep.formula_value && *rep.formula_value == j;
}

}  // namespace

DimReport dimension_report(const ProblemSpec& spec, const std::vector<std::uint64_t>& seeds) {
    spec.validate();
    DimReport rep;
    rep.spec = spec;
    const auto kind = classify(spec.graph).kind;
    const std::size_t d = spec.order();
    try {
        if (kind == GraphKind::path && spec.graph == path_graph(d)) {
            rep.label = "tensor-train";
            const double printed = static_cast<double>(dim_tt_formula(spec.edge_dims, spec.vertex_dims, TTReading::printed));
            const double alt = static_cast<double>(dim_tt_formula(spec.edge_dims, spec.vertex_dims, TTReading::alternative));
            rep.formula_value = printed;
            rep.variants.push_back({"tt_formula", printed});
            rep.variants.push_back({"tt_formula_alternative_index", alt});
        } else if (kind == GraphKind::cycle) {
            rep.label = "matrix-product-state";
            require_not_subcritical(spec);
            const double mps = static_cast<double>(cycle_count(spec));
            rep.formula_value = mps;
            rep.variants.push_back({"mps_formula", mps});
            const auto r0 = spec.edge_dims[0];
            const bool uniform = std::all_of(spec.edge_dims.begin(), spec.edge_dims.end(), [&](auto r) { return r == r0; }) &&
                                 std::all_of(spec.vertex_dims.begin(), spec.vertex_dims.end(), [&](auto n) { return n == r0 * r0; });
            if (d == 3 && uniform) {
                const double n = static_cast<double>(r0);
                rep.variants.push_back({"c3_parameter_count", 3 * std::pow(n, 4) - 3 * n * n});
            }
        } else {
            rep.label = "general";
        }
    } catch (const std::domain_error&) {
        rep.label += "-subcritical";
        rep.formula_value.reset();
        rep.variants.clear();
    }
    rep.jacobian = jacobian_dimension(spec, seeds);
    settle(rep);
    return rep;
}

double tensor_rank_lower_bound(double n) { return 3 * n * n - 2 * std::sqrt(2.0) * std::pow(n, 1.5) - 3 * n; }

double secant_dimension_bound(double n) {
    const double s2 = std::sqrt(2.0);
    return 9 * std::pow(n, 4) - 6 * s2 * std::pow(n, 3.5) - 9 * std::pow(n, 3) - 6 * n * n + 4 * s2 * std::pow(n, 1.5) +
           6 * n - 1;
}

std::vector<DimReport> parameter_report(std::size_t n, const std::vector<std::uint64_t>& seeds) {
    if (n < 2 || n > 3) throw std::invalid_argument("parameter_report supports n in {2, 3}");
    const std::size_t n2 = n * n;
    const double n6 = static_cast<double>(ipow(n, 6));
    std::vector<DimReport> out;

    DimReport c3;
    c3.label = "C3";
    c3.spec = ProblemSpec{cycle_graph(3), RankTuple{n, n, n}, {n2, n2, n2}};
    const double c3_count = static_cast<double>(3 * ipow(n, 4) - 3 * n2);
    c3.formula_value = c3_count;
    c3.variants = {{"c3_parameter_count", c3_count}, {"mps_formula", static_cast<double>(cycle_count(*c3.spec))}};
    c3.jacobian = jacobian_dimension(*c3.spec, seeds);
    settle(c3);
    out.push_back(c3);

    DimReport p3;
    p3.label = "P3";
    p3.spec = ProblemSpec{path_graph(3), RankTuple{n2, n2}, {n2, n2, n2}};
    p3.formula_value = n6;
    p3.variants = {{"p3_parameter_count", n6},
                   {"tt_formula_outside_hypothesis",
                    static_cast<double>(dim_tt_formula(p3.spec->edge_dims, p3.spec->vertex_dims, TTReading::printed, false))}};
    p3.jacobian = jacobian_dimension(*p3.spec, seeds);
    settle(p3);
    out.push_back(p3);

    DimReport sub;
    sub.label = "Sub";
    sub.formula_value = n6;
    sub.variants = {{"subspace_formula", static_cast<double>(dim_subspace_formula({n2, n2, n2}, {n2, n2, n2}))}};
    out.push_back(sub);

    DimReport sigma;
    sigma.label = "sigma";
    const double bound = secant_dimension_bound(static_cast<double>(n));
    sigma.formula_value = bound;
    sigma.variants = {{"secant_dimension_lower_bound", bound},
                      {"tensor_rank_lower_bound", tensor_rank_lower_bound(static_cast<double>(n))}};
    out.push_back(sigma);

    DimReport conclusion;
    conclusion.label = "conclusion";
    const double c3_max = std::max(c3_count, c3.variants[1].value);
    conclusion.variants = {{"c3_below_p3", c3_max < n6 ? 1.0 : 0.0},
                           {"c3_below_sub", c3_max < n6 ? 1.0 : 0.0},
                           {"c3_below_secant_bound", c3_max < bound ? 1.0 : 0.0}};
    out.push_back(conclusion);
    return out;
}

}  // namespace tnrank
