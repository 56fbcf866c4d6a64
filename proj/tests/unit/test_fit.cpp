#include <doctest.h>

#include <cmath>

#include "tnrank/fit.hpp"
#include "tnrank/gallery.hpp"

using namespace tnrank;

namespace {

// max over unit x, y, z of <W_3, x (x) y (x) z>. W_3 has nonnegative entries,
// so nonnegative real vectors (cos t, sin t) suffice.
double w3_best_overlap() {
    auto f = [](double a, double b, double c) {
        return std::cos(a) * std::cos(b) * std::sin(c) + std::cos(a) * std::sin(b) * std::cos(c) +
               std::sin(a) * std::cos(b) * std::cos(c);
    };
    const int steps = 120;
    const double h = std::acos(-1.0) / 2 / steps;
    double best = -1, ba = 0, bb = 0, bc = 0;
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps; ++j)
            for (int k = 0; k <= steps; ++k) {
                const double v = f(i * h, j * h, k * h);
                if (v > best) best = v, ba = i * h, bb = j * h, bc = k * h;
            }
    for (double step = h; step > 1e-10; step /= 2) {
        for (bool moved = true; moved;) {
            moved = false;
            for (int axis = 0; axis < 3; ++axis) {
                for (double s : {step, -step}) {
                    double a = ba, b = bb, c = bc;
                    (axis == 0 ? a : axis == 1 ? b : c) += s;
                    const double v = f(a, b, c);
                    if (v > best) best = v, ba = a, bb = b, bc = c, moved = true;
                }
            }
        }
    }
    return best;
}

const ProblemSpec kC3{cycle_graph(3), RankTuple{2, 2, 2}, {3, 3, 3}};

}  // namespace

TEST_SUITE("fit") {
    TEST_CASE("refit a tensor from the model class") {
        const auto t = contract_network(random_state(kC3, 7));
        FitOptions o;
        o.restarts = 20;
        o.max_iters = 5000;
        o.seed = 1;
        const auto r = als_fit(t, kC3, o);
        CHECK(r.relative_residual < 1e-6);
        CHECK(relative_error(contract_network(r.best_state), t) == doctest::Approx(r.relative_residual).epsilon(1e-6));
        CHECK(r.restarts.size() == 20);
        for (const auto& tr : r.restarts) {
            for (std::size_t k = 1; k < tr.residuals.size(); ++k) CHECK(tr.residuals[k] <= tr.residuals[k - 1] + 1e-14);
        }
    }

    TEST_CASE("GHZ_3 with one unit bond") {
        const ProblemSpec s{cycle_graph(3), RankTuple{1, 2, 2}, {2, 2, 2}};
        CHECK(als_fit(ghz_state(3).tensor, s).relative_residual < 1e-6);
    }

    TEST_CASE("best rank-one approximation of W_3") {
        const double overlap = w3_best_overlap();
        CHECK(overlap == doctest::Approx(2 / std::sqrt(3.0)).epsilon(1e-9));
        const double oracle = std::sqrt(1 - overlap * overlap / 3);
        const ProblemSpec s{cycle_graph(3), RankTuple{1, 1, 1}, {2, 2, 2}};
        CHECK(std::abs(als_fit(w_state(3).tensor, s).relative_residual - oracle) < 1e-3);
    }

    TEST_CASE("deterministic and schedule independent") {
        const auto t = contract_network(random_state(kC3, 3));
        FitOptions o;
        o.restarts = 4;
        o.max_iters = 40;
        o.seed = 9;
        o.threads = 1;
        const auto a = als_fit(t, kC3, o);
        o.threads = 4;
        const auto b = als_fit(t, kC3, o);
        CHECK(a.best_restart == b.best_restart);
        CHECK(a.relative_residual == b.relative_residual);
        for (std::size_t i = 0; i < 4; ++i) CHECK(a.restarts[i].residuals == b.restarts[i].residuals);
        o.seed = 10;
        CHECK(als_fit(t, kC3, o).restarts[0].residuals != a.restarts[0].residuals);
    }

    TEST_CASE("ridge is only used on rank-deficient environments") {
        // r = 3 on a 2-dim leg leaves the environment rank-deficient.
        const ProblemSpec s{cycle_graph(3), RankTuple{3, 3, 1}, {2, 3, 2}};
        const auto t = contract_network(random_state(s, 5));
        FitOptions o;
        o.restarts = 1;
        o.max_iters = 5;
        CHECK(als_fit(t, s, o).restarts[0].ridge_solves == 0);
        o.ridge = 1e-12;
        CHECK(als_fit(t, s, o).restarts[0].ridge_solves > 0);
        CHECK(als_fit(contract_network(random_state(kC3, 5)), kC3, o).restarts[0].ridge_solves == 0);
    }

    TEST_CASE("magnitude is invariant under rescaling factors") {
        const auto st = random_state(kC3, 2);
        auto fs = st.factors();
        fs[0] = scale(fs[0], Complex(8, 0));
        fs[1] = scale(fs[1], Complex(0.125, 0));
        CHECK(max_factor_magnitude(TNState(kC3, fs)) == doctest::Approx(max_factor_magnitude(st)));
        CHECK(cancellation_ratio(TNState(kC3, fs)) == doctest::Approx(cancellation_ratio(st)));
        // Unit bonds: the contraction is an outer product, so nothing cancels.
        CHECK(cancellation_ratio(random_state(ProblemSpec{cycle_graph(3), RankTuple{1, 1, 1}, {2, 3, 2}}, 4)) == doctest::Approx(1.0));
    }

    TEST_CASE("border probe on an in-class tensor") {
        const ProblemSpec s{cycle_graph(3), RankTuple{2, 2, 2}, {4, 4, 4}};
        FitOptions o;
        o.restarts = 4;
        o.max_iters = 25;
        const auto rep = border_probe(contract_network(random_state(s, 100)), s, {0.1, 0.05, 0.02}, o);
        REQUIRE(rep.steps.size() == 3);
        CHECK(rep.all_met);
        for (const auto& st : rep.steps) CHECK(st.max_factor_magnitude < 10);
        CHECK_THROWS_AS(border_probe(ghz_state(3).tensor, kC3, {0.1, 0.2}), std::invalid_argument);
    }

    TEST_CASE("errors") {
        CHECK_THROWS_AS(als_fit(w_state(4).tensor, kC3), ShapeError);
        CHECK_THROWS_AS(als_fit(Tensor::zeros({3, 3, 3}, ScalarMode::floating), kC3), std::invalid_argument);
        FitOptions o;
        o.restarts = 0;
        CHECK_THROWS_AS(als_fit(contract_network(random_state(kC3, 1)), kC3, o), std::invalid_argument);
        const ProblemSpec split{NetworkGraph(4, {{0, 1, 1}, {2, 3, 1}}), RankTuple{2, 2}, {2, 2, 2, 2}};
        CHECK_THROWS_AS(als_fit(Tensor::zeros({2, 2, 2, 2}, ScalarMode::floating), split), GraphError);
    }
}
