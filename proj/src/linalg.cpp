#include "tnrank/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tnrank/eigen_bridge.hpp"

namespace tnrank {

namespace {

// Gaussian integer a + b i.
struct GaussInt {
    mpz_class re;
    mpz_class im;

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& x, const GaussInt& y) {
    if (sgn(x.im) == 0 && sgn(y.im) == 0) return {x.re * y.re, 0};
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

GaussInt sub(const GaussInt& x, const GaussInt& y) { return {x.re - y.re, x.im - y.im}; }

// Division that is exact by construction of the elimination; a remainder is a bug.
GaussInt exact_div(const GaussInt& x, const GaussInt& y) {
    if (sgn(y.im) == 0) {
        if (!mpz_divisible_p(x.re.get_mpz_t(), y.re.get_mpz_t()) ||
            !mpz_divisible_p(x.im.get_mpz_t(), y.re.get_mpz_t())) {
            throw std::logic_error("fraction-free elimination produced an inexact quotient");
        }
        GaussInt q;
        mpz_divexact(q.re.get_mpz_t(), x.re.get_mpz_t(), y.re.get_mpz_t());
        mpz_divexact(q.im.get_mpz_t(), x.im.get_mpz_t(), y.re.get_mpz_t());
        return q;
    }
    const GaussInt num = mul(x, GaussInt{y.re, -y.im});
    const mpz_class n = y.re * y.re + y.im * y.im;
    if (!mpz_divisible_p(num.re.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(num.im.get_mpz_t(), n.get_mpz_t())) {
        throw std::logic_error("fraction-free elimination produced an inexact quotient");
    }
    GaussInt q;
    mpz_divexact(q.re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
    return q;
}

using IntMatrix = std::vector<std::vector<GaussInt>>;

// Scales every row by the lcm of its denominators; row space and rank are unchanged.
IntMatrix integer_rows(const Tensor& m) {
    const std::size_t rows = m.dim(0);
    const std::size_t cols = m.dim(1);
    const auto& a = m.exact();
    IntMatrix out(rows, std::vector<GaussInt>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            const auto& x = a[i * cols + j];
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re().get_den_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im().get_den_mpz_t());
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const auto& x = a[i * cols + j];
            out[i][j].re = x.re().get_num() * (l / x.re().get_den());
            out[i][j].im = x.im().get_num() * (l / x.im().get_den());
        }
    }
    return out;
}

struct Elimination {
    IntMatrix a;
    std::vector<std::size_t> pivots;
    GaussInt last_pivot{1, 0};
};

// Bareiss elimination with column skipping. Pivot: first column left to right
// that has a nonzero entry at or below the current row; lowest such row.
// With reduce_above the rows above the pivot are cleared too (Gauss-Jordan),
// leaving every pivot equal to last_pivot.
Elimination fraction_free(IntMatrix a, bool reduce_above) {
    Elimination e;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    GaussInt prev{1, 0};
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const GaussInt piv = a[r][c];
        for (std::size_t i = reduce_above ? 0 : r + 1; i < rows; ++i) {
            if (i == r) continue;
            const GaussInt aic = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) {
                GaussInt t = mul(piv, a[i][j]);
                if (!aic.is_zero() && !a[r][j].is_zero()) t = sub(t, mul(aic, a[r][j]));
                a[i][j] = exact_div(t, prev);
            }
        }
        prev = piv;
        e.pivots.push_back(c);
        ++r;
    }
    e.a = std::move(a);
    e.last_pivot = prev;
    return e;
}

void require_matrix(const Tensor& m) {
    if (m.order() != 2) throw ShapeError("expected an order-2 tensor");
}

RankDecision decide_from_singular_values(std::vector<double> sv, std::size_t rows, std::size_t cols,
                                         std::optional<double> tol) {
    RankDecision d;
    const double rel = tol.value_or(default_rank_tolerance(rows, cols));
    const double s1 = sv.empty() ? 0.0 : sv.front();
    d.threshold = rel * s1;
    std::size_t r = 0;
    if (s1 > 0.0) {
        while (r < sv.size() && sv[r] > d.threshold) ++r;
    }
    d.rank = r;
    const double inf = std::numeric_limits<double>::infinity();
    if (r == 0) {
        d.gap_ratio = inf;
    } else if (r < sv.size() && sv[r] > 0.0) {
        d.gap_ratio = sv[r - 1] / sv[r];
    } else {
        d.gap_ratio = inf;
    }
    constexpr double kMargin = 100.0;
    if (r > 0 && sv[r - 1] <= kMargin * d.threshold) d.near_boundary = true;
    if (r < sv.size() && s1 > 0.0 && sv[r] * kMargin >= d.threshold) d.near_boundary = true;
    d.singular_values = std::move(sv);
    return d;
}

}  // namespace

double default_rank_tolerance(std::size_t rows, std::size_t cols) {
    return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * 8.0;
}

RankDecision rank_decision(const Tensor& m, std::optional<double> tol) {
    require_matrix(m);
    const std::size_t rows = m.dim(0);
    const std::size_t cols = m.dim(1);
    if (m.mode() == ScalarMode::exact) {
        RankDecision d;
        if (rows && cols) d.rank = fraction_free(integer_rows(m), false).pivots.size();
        d.gap_ratio = std::numeric_limits<double>::infinity();
        return d;
    }
    if (rows == 0 || cols == 0) return decide_from_singular_values({}, rows, cols, tol);
    Eigen::JacobiSVD<ComplexMatrix> svd(to_eigen(m));
    const auto& s = svd.singularValues();
    return decide_from_singular_values(std::vector<double>(s.data(), s.data() + s.size()), rows, cols, tol);
}

std::size_t matrix_rank(const Tensor& m, std::optional<double> tol) {
    return rank_decision(m, tol).rank;
}

std::pair<Tensor, std::vector<std::size_t>> reduced_row_echelon(const Tensor& m) {
    require_matrix(m);
    if (m.mode() != ScalarMode::exact) throw ModeMismatch("reduced_row_echelon needs exact mode");
    const std::size_t cols = m.dim(1);
    if (m.dim(0) == 0 || cols == 0) return {Tensor::zeros({0, cols}, ScalarMode::exact), {}};
    Elimination e = fraction_free(integer_rows(m), true);
    const std::size_t r = e.pivots.size();
    const GaussianRational d{mpq_class(e.last_pivot.re), mpq_class(e.last_pivot.im)};
    Tensor::ExactData out;
    out.reserve(r * cols);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const auto& x = e.a[i][j];
            if (x.is_zero()) {
                out.emplace_back();
            } else {
                out.push_back(GaussianRational{mpq_class(x.re), mpq_class(x.im)} / d);
            }
        }
    }
    return {Tensor({r, cols}, std::move(out)), std::move(e.pivots)};
}

RankFactorization rank_factorize(const Tensor& m, std::optional<double> tol) {
    require_matrix(m);
    const std::size_t rows = m.dim(0);
    const std::size_t cols = m.dim(1);
    RankFactorization f;
    if (m.mode() == ScalarMode::exact) {
        auto [rref, pivots] = reduced_row_echelon(m);
        const std::size_t r = pivots.size();
        const auto& a = m.exact();
        Tensor::ExactData left(rows * r);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t k = 0; k < r; ++k) left[i * r + k] = a[i * cols + pivots[k]];
        }
        f.left = Tensor({rows, r}, std::move(left));
        f.right = std::move(rref);
        f.pivot_columns = std::move(pivots);
        f.decision.rank = r;
        f.decision.gap_ratio = std::numeric_limits<double>::infinity();
        return f;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(to_eigen(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    f.decision = decide_from_singular_values(std::vector<double>(s.data(), s.data() + s.size()), rows, cols, tol);
    const auto r = static_cast<Eigen::Index>(f.decision.rank);
    f.left = from_eigen(svd.matrixU().leftCols(r));
    ComplexMatrix right = s.head(r).cast<Complex>().asDiagonal() * svd.matrixV().leftCols(r).adjoint();
    f.right = from_eigen(right);
    return f;
}

ComplexMatrix to_eigen(const Tensor& m) {
    require_matrix(m);
    const auto& a = m.floating();
    const auto rows = static_cast<Eigen::Index>(m.dim(0));
    const auto cols = static_cast<Eigen::Index>(m.dim(1));
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = a[static_cast<std::size_t>(i * cols + j)];
    }
    return out;
}

Tensor from_eigen(const ComplexMatrix& m) {
    const auto rows = static_cast<std::size_t>(m.rows());
    const auto cols = static_cast<std::size_t>(m.cols());
    Tensor::FloatData out(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            out[i * cols + j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return Tensor({rows, cols}, std::move(out));
}

}  // namespace tnrank
