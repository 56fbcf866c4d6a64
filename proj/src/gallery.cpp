#include "tnrank/gallery.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace tnrank {

namespace {

using Mat2 = std::array<std::array<long, 2>, 2>;

constexpr Mat2 kE11{{{1, 0}, {0, 0}}};
constexpr Mat2 kE12{{{0, 1}, {0, 0}}};
constexpr Mat2 kE22{{{0, 0}, {0, 1}}};
constexpr Mat2 kI2{{{1, 0}, {0, 1}}};
constexpr Mat2 kE21pE22{{{0, 0}, {1, 1}}};

Tensor exact_tensor(Shape dims, const std::vector<long>& values) {
    Tensor::ExactData d;
    d.reserve(values.size());
    for (long v : values) d.emplace_back(v);
    return Tensor(std::move(dims), std::move(d));
}

Tensor basis(std::size_t n, std::size_t i) { return Tensor::basis_vector(n, i, ScalarMode::exact); }

// [bond, phys] factor with entry 1 at (a, s) iff table[s] == a.
Tensor end_factor(std::array<std::size_t, 2> bond_of_phys) {
    std::vector<long> v(4, 0);
    for (std::size_t s = 0; s < 2; ++s) v[bond_of_phys[s] * 2 + s] = 1;
    return exact_tensor({2, 2}, v);
}

// [in, out, phys] with slice s equal to m[s].
Tensor bond_factor(const Mat2& m0, const Mat2& m1) {
    std::vector<long> v(8, 0);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            v[(a * 2 + b) * 2 + 0] = m0[a][b];
            v[(a * 2 + b) * 2 + 1] = m1[a][b];
        }
    }
    return exact_tensor({2, 2, 2}, v);
}

// On cycle_graph(d) vertex 0 sees (out = edge 0, in = edge d-1), so its
// [in, out, phys] matrices are stored transposed in the fixed layout.
Tensor cycle_layout(std::size_t v, const Tensor& in_out_phys) {
    if (v != 0) return in_out_phys;
    const std::size_t perm[] = {1, 0, 2};
    return permute(in_out_phys, perm);
}

ProblemSpec uniform_spec(NetworkGraph g, std::size_t r, std::size_t n) {
    const std::size_t c = g.edge_count();
    const std::size_t d = g.vertex_count();
    return ProblemSpec{std::move(g), RankTuple(std::vector<std::size_t>(c, r)), std::vector<std::size_t>(d, n)};
}

QubitState qubit_state(std::size_t d, const std::vector<std::vector<std::size_t>>& support) {
    QubitState q;
    q.cp.dims = Shape(d, 2);
    q.cp.mode = ScalarMode::exact;
    std::vector<long> values(std::size_t{1} << d, 0);
    for (const auto& idx : support) {
        std::vector<Tensor> term;
        std::size_t off = 0;
        for (auto s : idx) {
            term.push_back(basis(2, s));
            off = off * 2 + s;
        }
        values[off] = 1;
        q.cp.terms.push_back(std::move(term));
    }
    q.tensor = exact_tensor(Shape(d, 2), values);
    return q;
}

long permutation_sign(const std::vector<std::size_t>& p) {
    long sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) sign = -sign;
        }
    }
    return sign;
}

mpz_class factorial(std::size_t n) {
    mpz_class f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
    return f;
}

StarState star_symmetrization(const std::vector<Tensor>& vectors, bool skew) {
    const std::size_t n = vectors.size();
    if (n < 2) throw std::invalid_argument("need at least two vectors");
    for (const auto& v : vectors) {
        if (v.dims() != Shape{n}) throw ShapeError("need n vectors of length n");
        if (v.mode() != ScalarMode::exact) throw ModeMismatch("decomposable tensors are built in exact mode");
    }
    const GaussianRational weight{mpq_class(1, factorial(n))};

    // Center factor: [a_1..a_{n-1}, x] = weight * sum_s sign v_{s(0)}[x] [a_k = s(k)].
    Shape center_dims(n, n);
    Tensor::ExactData center(shape_size(center_dims));
    Tensor::ExactData full(shape_size(center_dims));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        const GaussianRational c = skew && permutation_sign(perm) < 0 ? -weight : weight;
        std::size_t bond_off = 0;
        for (std::size_t k = 1; k < n; ++k) bond_off = bond_off * n + perm[k];
        const auto& head = vectors[perm[0]].exact();
        for (std::size_t x = 0; x < n; ++x) {
            if (!head[x].is_zero()) center[bond_off * n + x] += c * head[x];
        }
        // Direct expansion for the tensor itself.
        std::vector<std::size_t> idx(n, 0);
        for (std::size_t off = 0; off < full.size(); ++off) {
            GaussianRational prod = c;
            for (std::size_t k = 0; k < n && !prod.is_zero(); ++k) prod *= vectors[perm[k]].exact()[idx[k]];
            if (!prod.is_zero()) full[off] += prod;
            for (std::size_t k = n; k-- > 0;) {
                if (++idx[k] < n) break;
                idx[k] = 0;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Leaf factor: [a, y] = v_a[y].
    Tensor::ExactData leaf(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t y = 0; y < n; ++y) leaf[a * n + y] = vectors[a].exact()[y];
    }
    std::vector<Tensor> factors{Tensor(center_dims, std::move(center))};
    for (std::size_t k = 1; k < n; ++k) factors.emplace_back(Shape{n, n}, leaf);
    return StarState{Tensor(Shape(n, n), std::move(full)), TNState(uniform_spec(star_graph(n), n, n), std::move(factors))};
}

}  // namespace

QubitState w_state(std::size_t d) {
    if (d < 3) throw std::invalid_argument("w_state needs d >= 3");
    std::vector<std::vector<std::size_t>> support;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<std::size_t> idx(d, 0);
        idx[k] = 1;
        support.push_back(idx);
    }
    QubitState q = qubit_state(d, support);

    // Bond state 0: no v2 seen yet; 1: v2 already placed.
    std::vector<Tensor> path{end_factor({0, 1})};
    for (std::size_t v = 1; v + 1 < d; ++v) path.push_back(bond_factor(kI2, kE12));
    path.push_back(end_factor({1, 0}));
    q.path = TNState(uniform_spec(path_graph(d), 2, 2), std::move(path));

    std::vector<Tensor> cycle{cycle_layout(0, bond_factor(kE11, kE22))};
    for (std::size_t v = 1; v + 1 < d; ++v) cycle.push_back(bond_factor(kI2, kE12));
    cycle.push_back(bond_factor(kE21pE22, kE11));
    q.cycle = TNState(uniform_spec(cycle_graph(d), 2, 2), std::move(cycle));
    return q;
}

QubitState ghz_state(std::size_t d) {
    if (d < 2) throw std::invalid_argument("ghz_state needs d >= 2");
    QubitState q = qubit_state(d, {std::vector<std::size_t>(d, 0), std::vector<std::size_t>(d, 1)});
    std::vector<Tensor> path{end_factor({0, 1})};
    for (std::size_t v = 1; v + 1 < d; ++v) path.push_back(bond_factor(kE11, kE22));
    path.push_back(end_factor({0, 1}));
    q.path = TNState(uniform_spec(path_graph(d), 2, 2), std::move(path));
    if (d >= 3) {
        std::vector<Tensor> cycle;
        for (std::size_t v = 0; v < d; ++v) cycle.push_back(cycle_layout(v, bond_factor(kE11, kE22)));
        q.cycle = TNState(uniform_spec(cycle_graph(d), 2, 2), std::move(cycle));
    }
    return q;
}

NetworkGraph strassen_cycle_graph() { return NetworkGraph(3, {{0, 2, 1}, {0, 1, 1}, {1, 2, 1}}); }

StrassenTensor strassen(std::size_t m, std::size_t n, std::size_t p) {
    if (m < 2 || n < 2 || p < 2) throw std::invalid_argument("strassen needs m, n, p >= 2");
    const std::size_t du = m * n, dv = n * p, dw = m * p;
    StrassenTensor s;
    s.cp.dims = {du, dv, dw};
    s.cp.mode = ScalarMode::exact;
    std::vector<long> t(du * dv * dw, 0), a(m * n * du, 0), b(n * p * dv, 0), c(m * p * dw, 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < p; ++j) {
                const std::size_t u = i * n + k, v = k * p + j, w = i * p + j;
                t[(u * dv + v) * dw + w] = 1;
                s.cp.terms.push_back({basis(du, u), basis(dv, v), basis(dw, w)});
            }
        }
    }
    // A: [E(m), F(n), U]; B: [F(n), G(p), V]; C: [E(m), G(p), W].
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n; ++k) a[(i * n + k) * du + i * n + k] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < p; ++j) b[(k * p + j) * dv + k * p + j] = 1;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < p; ++j) c[(i * p + j) * dw + i * p + j] = 1;
    }
    s.tensor = exact_tensor({du, dv, dw}, t);
    ProblemSpec spec{strassen_cycle_graph(), RankTuple{m, n, p}, {du, dv, dw}};
    s.cycle = TNState(std::move(spec), {exact_tensor({m, n, du}, a), exact_tensor({n, p, dv}, b),
                                        exact_tensor({m, p, dw}, c)});
    return s;
}

StarState decomposable_sym(const std::vector<Tensor>& vectors) { return star_symmetrization(vectors, false); }

StarState decomposable_skew(const std::vector<Tensor>& vectors) { return star_symmetrization(vectors, true); }

Tensor monomial_tensor(const std::vector<std::size_t>& exponents) {
    const std::size_t n = exponents.size();
    const std::size_t d = std::accumulate(exponents.begin(), exponents.end(), std::size_t{0});
    if (n == 0 || d < 2) throw std::invalid_argument("monomial needs total degree >= 2");
    mpz_class num = 1;
    for (auto p : exponents) num *= factorial(p);
    const GaussianRational value{mpq_class(num, factorial(d))};
    Shape dims(d, n);
    Tensor::ExactData data(shape_size(dims));
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t off = 0; off < data.size(); ++off) {
        std::vector<std::size_t> count(n, 0);
        for (auto x : idx) ++count[x];
        if (count == exponents) data[off] = value;
        for (std::size_t k = d; k-- > 0;) {
            if (++idx[k] < n) break;
            idx[k] = 0;
        }
    }
    return Tensor(std::move(dims), std::move(data));
}

Tensor border_example(std::size_t d, std::size_t n) {
    if (d < 3 || n < 2) throw std::invalid_argument("border_example needs d >= 3 and n >= 2");
    const std::size_t dim = n * n;
    Shape dims(d, dim);
    Tensor::ExactData data(shape_size(dims));
    auto unit = [n](std::size_t a, std::size_t b) { return a * n + b; };
    const std::size_t inner = d - 3;
    std::size_t inner_count = 1;
    for (std::size_t k = 0; k < inner; ++k) inner_count *= n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t t = 0; t < inner_count; ++t) {
                // Chain j -> k_1 -> ... -> k_inner -> i.
                std::vector<std::size_t> path{j};
                std::size_t rest = t;
                std::vector<std::size_t> ks(inner);
                for (std::size_t q = inner; q-- > 0;) {
                    ks[q] = rest % n;
                    rest /= n;
                }
                path.insert(path.end(), ks.begin(), ks.end());
                path.push_back(i);
                std::size_t tail = 0;
                for (std::size_t q = 0; q + 1 < path.size(); ++q) tail = tail * dim + unit(path[q], path[q + 1]);
                std::size_t tail_size = 1;
                for (std::size_t q = 2; q < d; ++q) tail_size *= dim;
                const std::size_t first = (unit(i, j) * dim + unit(j, j)) * tail_size + tail;
                const std::size_t second = (unit(i, i) * dim + unit(i, j)) * tail_size + tail;
                data[first] += 1;
                data[second] += 1;
            }
        }
    }
    return Tensor(std::move(dims), std::move(data));
}

}  // namespace tnrank
