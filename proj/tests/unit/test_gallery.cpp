#include <doctest.h>

#include "tnrank/gallery.hpp"
#include "tnrank/tree_rank.hpp"

using namespace tnrank;

namespace {

std::vector<std::size_t> unravel(std::size_t off, const Shape& dims) {
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        idx[k] = off % dims[k];
        off /= dims[k];
    }
    return idx;
}

}  // namespace

TEST_SUITE("gallery") {
    TEST_CASE("W and GHZ entries follow their definitions") {
        for (std::size_t d = 3; d <= 6; ++d) {
            const auto w = w_state(d);
            const auto g = ghz_state(d);
            for (std::size_t off = 0; off < w.tensor.size(); ++off) {
                const auto idx = unravel(off, w.tensor.dims());
                std::size_t ones = 0;
                for (auto x : idx) ones += x;
                CHECK(w.tensor.exact()[off] == GaussianRational(ones == 1 ? 1 : 0));
                CHECK(g.tensor.exact()[off] == GaussianRational(ones == 0 || ones == d ? 1 : 0));
            }
            CHECK(w.cp.to_tensor() == w.tensor);
            CHECK(g.cp.to_tensor() == g.tensor);
            CHECK(contract_network(w.path) == w.tensor);
            CHECK(contract_network(*w.cycle) == w.tensor);
            CHECK(contract_network(g.path) == g.tensor);
            CHECK(contract_network(*g.cycle) == g.tensor);
        }
        CHECK_FALSE(ghz_state(2).cycle.has_value());
        CHECK_THROWS(w_state(2));
    }

    TEST_CASE("W_3 from three outer products") {
        const auto e0 = Tensor::basis_vector(2, 0, ScalarMode::exact);
        const auto e1 = Tensor::basis_vector(2, 1, ScalarMode::exact);
        const auto sum = outer(outer(e0, e0), e1) + outer(outer(e0, e1), e0) + outer(outer(e1, e0), e0);
        CHECK(sum == w_state(3).tensor);
    }

    TEST_CASE("strassen encodes matrix multiplication") {
        const std::size_t m = 2, n = 3, p = 2;
        const auto s = strassen(m, n, p);
        CHECK(s.tensor.dims() == Shape{6, 6, 4});
        // Contracting with A (m x n) and B (n x p) must give AB (m x p).
        std::vector<long> a(m * n), b(n * p);
        for (std::size_t k = 0; k < a.size(); ++k) a[k] = static_cast<long>(k) - 2;
        for (std::size_t k = 0; k < b.size(); ++k) b[k] = 3 - static_cast<long>(k * k);
        const auto& t = s.tensor.exact();
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                GaussianRational got;
                for (std::size_t u = 0; u < m * n; ++u) {
                    for (std::size_t v = 0; v < n * p; ++v) got += t[(u * 6 + v) * 4 + i * p + j] * GaussianRational(a[u] * b[v]);
                }
                long want = 0;
                for (std::size_t k = 0; k < n; ++k) want += a[i * n + k] * b[k * p + j];
                CHECK(got == GaussianRational(want));
            }
        }
        std::size_t nonzeros = 0;
        for (const auto& x : strassen(2, 2, 2).tensor.exact()) nonzeros += x.is_zero() ? 0 : 1;
        CHECK(nonzeros == 8);
        CHECK(s.cp.to_tensor() == s.tensor);
        CHECK(contract_network(s.cycle) == s.tensor);
        CHECK(multilinear_rank(s.tensor) == std::vector<std::size_t>{6, 6, 4});
    }

    TEST_CASE("symmetric and skew decomposables") {
        const auto e = [](std::size_t n, std::size_t i) { return Tensor::basis_vector(n, i, ScalarMode::exact); };
        const auto skew2 = decomposable_skew({e(2, 0), e(2, 1)});
        const auto expect = scale(outer(e(2, 0), e(2, 1)) - outer(e(2, 1), e(2, 0)), GaussianRational(mpq_class(1, 2)));
        CHECK(skew2.tensor == expect);
        for (std::size_t n = 3; n <= 4; ++n) {
            std::vector<Tensor> basis;
            for (std::size_t i = 0; i < n; ++i) basis.push_back(e(n, i));
            const auto sym = decomposable_sym(basis);
            const auto sk = decomposable_skew(basis);
            CHECK(contract_network(sym.star) == sym.tensor);
            CHECK(contract_network(sk.star) == sk.tensor);
            const RankTuple full(std::vector<std::size_t>(n - 1, n));
            CHECK(ttns_rank(sym.tensor, star_graph(n)) == full);
            CHECK(ttns_rank(sk.tensor, star_graph(n)) == full);
        }
        CHECK_THROWS(decomposable_sym({e(3, 0), e(3, 1)}));
    }

    TEST_CASE("monomials") {
        for (std::size_t d = 3; d <= 5; ++d) {
            CHECK(monomial_tensor({d - 1, 1}) == scale(w_state(d).tensor, GaussianRational(mpq_class(1, d))));
        }
        const auto e = monomial_tensor({3});
        CHECK(e.dims() == Shape{1, 1, 1});
        CHECK(e.exact()[0] == GaussianRational(1));
        const auto m21 = monomial_tensor({2, 1, 0});
        std::vector<Tensor> basis;
        for (std::size_t i = 0; i < 3; ++i) basis.push_back(Tensor::basis_vector(3, i, ScalarMode::exact));
        CHECK(ttns_rank(m21, path_graph(3)).leq(ttns_rank(decomposable_sym(basis).tensor, path_graph(3))));
        CHECK_THROWS(monomial_tensor({1}));
    }

    TEST_CASE("border example") {
        const auto t = border_example(3, 2);
        CHECK(t.dims() == Shape{4, 4, 4});
        // E_12 (x) E_22 (x) E_21 with 0-based units (0,1), (1,1), (1,0).
        const std::size_t idx[] = {1, 3, 2};
        CHECK(t.exact()[t.offset(idx)] == GaussianRational(1));
        CHECK(multilinear_rank(t) == std::vector<std::size_t>{4, 4, 4});
        CHECK(tree_membership(t, path_graph(3), RankTuple{4, 4}));
        CHECK(multilinear_rank(border_example(4, 2)) == std::vector<std::size_t>{4, 4, 4, 4});
        CHECK(border_example(5, 2).order() == 5);
    }
}
