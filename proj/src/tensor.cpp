#include "tnrank/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tnrank {

namespace {

Shape strides_of(const Shape& dims) {
    Shape strides(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
    return strides;
}

bool is_zero_value(const GaussianRational& x) { return x.is_zero(); }
bool is_zero_value(const Complex& x) { return x == Complex{}; }

double modulus(const GaussianRational& x) { return std::abs(x.to_complex()); }
double modulus(const Complex& x) { return std::abs(x); }

template <class T>
std::vector<T> permute_data(const std::vector<T>& in, const Shape& dims, std::span<const std::size_t> perm) {
    const std::size_t d = dims.size();
    const Shape in_strides = strides_of(dims);
    Shape out_dims(d);
    Shape step(d);  // input stride for each output mode
    for (std::size_t j = 0; j < d; ++j) {
        out_dims[j] = dims[perm[j]];
        step[j] = in_strides[perm[j]];
    }
    std::vector<T> out(in.size());
    if (in.empty()) return out;
    Shape counter(d, 0);
    std::size_t src = 0;
    for (std::size_t dst = 0; dst < out.size(); ++dst) {
        out[dst] = in[src];
        for (std::size_t j = d; j-- > 0;) {
            if (++counter[j] < out_dims[j]) {
                src += step[j];
                break;
            }
            src -= step[j] * (out_dims[j] - 1);
            counter[j] = 0;
        }
    }
    return out;
}

// (m x k) * (k x n), skipping zero entries of the left operand.
template <class T>
std::vector<T> matmul_data(const std::vector<T>& a, const std::vector<T>& b, std::size_t m, std::size_t k,
                           std::size_t n) {
    std::vector<T> c(m * n, T{});
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            const T& x = a[i * k + p];
            if (is_zero_value(x)) continue;
            const T* brow = b.data() + p * n;
            T* crow = c.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                if (is_zero_value(brow[j])) continue;
                crow[j] += x * brow[j];
            }
        }
    }
    return c;
}

Tensor make(Shape dims, Tensor::ExactData d) { return {std::move(dims), std::move(d)}; }
Tensor make(Shape dims, Tensor::FloatData d) { return {std::move(dims), std::move(d)}; }

void check_permutation(std::span<const std::size_t> perm, std::size_t d) {
    if (perm.size() != d) throw ShapeError("permutation has wrong length");
    std::vector<bool> seen(d, false);
    for (std::size_t p : perm) {
        if (p >= d || seen[p]) throw ShapeError("invalid permutation");
        seen[p] = true;
    }
}

}  // namespace

std::size_t shape_size(const Shape& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

Tensor::Tensor(Shape dims, ExactData data) : dims_(std::move(dims)), data_(std::move(data)) {
    if (shape_size(dims_) != std::get<ExactData>(data_).size()) {
        throw ShapeError("entry count does not match the product of dims");
    }
}

Tensor::Tensor(Shape dims, FloatData data) : dims_(std::move(dims)), data_(std::move(data)) {
    if (shape_size(dims_) != std::get<FloatData>(data_).size()) {
        throw ShapeError("entry count does not match the product of dims");
    }
}

Tensor Tensor::zeros(Shape dims, ScalarMode mode) {
    const std::size_t n = shape_size(dims);
    if (mode == ScalarMode::exact) return {std::move(dims), ExactData(n)};
    return {std::move(dims), FloatData(n)};
}

Tensor Tensor::basis_vector(std::size_t n, std::size_t i, ScalarMode mode) {
    if (i >= n) throw ShapeError("basis index out of range");
    if (mode == ScalarMode::exact) {
        ExactData d(n);
        d[i] = 1;
        return {Shape{n}, std::move(d)};
    }
    FloatData d(n);
    d[i] = 1.0;
    return {Shape{n}, std::move(d)};
}

Tensor Tensor::identity(std::size_t n, ScalarMode mode) {
    if (mode == ScalarMode::exact) {
        ExactData d(n * n);
        for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1;
        return {Shape{n, n}, std::move(d)};
    }
    FloatData d(n * n);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
    return {Shape{n, n}, std::move(d)};
}

std::size_t Tensor::size() const {
    return visit([](const auto& v) { return v.size(); });
}

const Tensor::ExactData& Tensor::exact() const { return data<GaussianRational>(); }
const Tensor::FloatData& Tensor::floating() const { return data<Complex>(); }

std::size_t Tensor::offset(std::span<const std::size_t> index) const {
    if (index.size() != dims_.size()) throw ShapeError("index has wrong length");
    std::size_t off = 0;
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (index[k] >= dims_[k]) throw ShapeError("index out of range");
        off = off * dims_[k] + index[k];
    }
    return off;
}

Tensor Tensor::reshape(Shape dims) const {
    if (shape_size(dims) != size()) throw ShapeError("reshape changes the entry count");
    return visit([&](const auto& v) { return make(std::move(dims), v); });
}

Tensor Tensor::to_float() const {
    if (mode() == ScalarMode::floating) return *this;
    const auto& src = exact();
    FloatData out(src.size());
    std::transform(src.begin(), src.end(), out.begin(), [](const GaussianRational& x) { return x.to_complex(); });
    return {dims_, std::move(out)};
}

bool Tensor::is_zero() const {
    return visit([](const auto& v) {
        return std::all_of(v.begin(), v.end(), [](const auto& x) { return is_zero_value(x); });
    });
}

double Tensor::frobenius_norm() const {
    if (mode() == ScalarMode::exact) {
        mpq_class s = 0;
        for (const auto& x : exact()) s += x.norm2();
        return std::sqrt(to_double_nearest(s));
    }
    double s = 0.0;
    for (const auto& x : floating()) s += std::norm(x);
    return std::sqrt(s);
}

double Tensor::max_abs() const {
    return visit([](const auto& v) {
        double m = 0.0;
        for (const auto& x : v) m = std::max(m, modulus(x));
        return m;
    });
}

bool operator==(const Tensor& a, const Tensor& b) {
    if (a.mode() != b.mode() || a.dims_ != b.dims_) return false;
    return a.data_ == b.data_;
}

void require_same_mode(const Tensor& a, const Tensor& b) {
    if (a.mode() != b.mode()) {
        throw ModeMismatch(std::string("scalar mode mismatch: ") + std::string(to_string(a.mode())) + " vs " +
                           std::string(to_string(b.mode())));
    }
}

namespace {

template <class Op>
Tensor elementwise(const Tensor& a, const Tensor& b, Op op) {
    require_same_mode(a, b);
    if (a.dims() != b.dims()) throw ShapeError("elementwise operands differ in shape");
    return a.visit([&](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        const auto& y = b.data<T>();
        std::vector<T> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = op(x[i], y[i]);
        return make(a.dims(), std::move(out));
    });
}

}  // namespace

Tensor operator+(const Tensor& a, const Tensor& b) {
    return elementwise(a, b, [](const auto& x, const auto& y) { return x + y; });
}

Tensor operator-(const Tensor& a, const Tensor& b) {
    return elementwise(a, b, [](const auto& x, const auto& y) { return x - y; });
}

Tensor scale(const Tensor& a, const GaussianRational& c) {
    if (a.mode() != ScalarMode::exact) throw ModeMismatch("exact scalar applied to a float tensor");
    Tensor::ExactData out = a.exact();
    for (auto& x : out) x *= c;
    return {a.dims(), std::move(out)};
}

Tensor scale(const Tensor& a, Complex c) {
    if (a.mode() != ScalarMode::floating) throw ModeMismatch("float scalar applied to an exact tensor");
    Tensor::FloatData out = a.floating();
    for (auto& x : out) x *= c;
    return {a.dims(), std::move(out)};
}

double relative_error(const Tensor& a, const Tensor& b) {
    const Tensor diff = a.to_float() - b.to_float();
    const double nb = b.frobenius_norm();
    const double nd = diff.frobenius_norm();
    return nb > 0.0 ? nd / nb : nd;
}

Tensor outer(const Tensor& a, const Tensor& b) {
    return contract_pairs(a, b, {});
}

Tensor contract_pairs(const Tensor& a, const Tensor& b, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    require_same_mode(a, b);
    std::vector<bool> used_a(a.order(), false);
    std::vector<bool> used_b(b.order(), false);
    std::size_t k = 1;
    for (auto [ma, mb] : pairs) {
        if (ma >= a.order() || mb >= b.order()) throw ShapeError("contracted mode out of range");
        if (used_a[ma] || used_b[mb]) throw ShapeError("mode paired more than once");
        if (a.dim(ma) != b.dim(mb)) {
            throw ShapeError("extent mismatch: " + std::to_string(a.dim(ma)) + " vs " + std::to_string(b.dim(mb)));
        }
        used_a[ma] = used_b[mb] = true;
        k *= a.dim(ma);
    }
    std::vector<std::size_t> perm_a;
    std::vector<std::size_t> perm_b;
    Shape out_dims;
    std::size_t m = 1;
    std::size_t n = 1;
    for (std::size_t i = 0; i < a.order(); ++i) {
        if (!used_a[i]) {
            perm_a.push_back(i);
            out_dims.push_back(a.dim(i));
            m *= a.dim(i);
        }
    }
    for (auto [ma, mb] : pairs) {
        perm_a.push_back(ma);
        perm_b.push_back(mb);
    }
    for (std::size_t i = 0; i < b.order(); ++i) {
        if (!used_b[i]) {
            perm_b.push_back(i);
            out_dims.push_back(b.dim(i));
            n *= b.dim(i);
        }
    }
    return a.visit([&](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        const auto lhs = permute_data(x, a.dims(), perm_a);
        const auto rhs = permute_data(b.data<T>(), b.dims(), perm_b);
        return make(out_dims, matmul_data(lhs, rhs, m, k, n));
    });
}

Tensor permute(const Tensor& a, std::span<const std::size_t> perm) {
    check_permutation(perm, a.order());
    Shape out_dims(a.order());
    for (std::size_t j = 0; j < a.order(); ++j) out_dims[j] = a.dim(perm[j]);
    return a.visit([&](const auto& x) { return make(out_dims, permute_data(x, a.dims(), perm)); });
}

Tensor flatten(const Tensor& a, std::span<const std::size_t> row_modes) {
    const std::size_t d = a.order();
    std::vector<bool> is_row(d, false);
    for (std::size_t m : row_modes) {
        if (m >= d) throw ShapeError("row mode out of range");
        if (is_row[m]) throw ShapeError("row mode repeated");
        is_row[m] = true;
    }
    if (row_modes.empty() || row_modes.size() == d) {
        throw ShapeError("row modes must be a nonempty proper subset of the modes");
    }
    std::vector<std::size_t> perm;
    std::size_t rows = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (is_row[i]) {
            perm.push_back(i);
            rows *= a.dim(i);
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (!is_row[i]) perm.push_back(i);
    }
    return permute(a, perm).reshape({rows, a.size() / rows});
}

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.order() != 2 || b.order() != 2) throw ShapeError("matmul expects matrices");
    const std::pair<std::size_t, std::size_t> p{1, 0};
    return contract_pairs(a, b, std::span(&p, 1));
}

Tensor mlmul(const Tensor& a, std::span<const Tensor> ms) {
    if (ms.size() != a.order()) throw ShapeError("mlmul needs one matrix per mode");
    Tensor cur = a;
    const std::size_t d = a.order();
    for (std::size_t i = 0; i < d; ++i) {
        const Tensor& m = ms[i];
        if (m.order() != 2 || m.dim(1) != a.dim(i)) throw ShapeError("mlmul matrix has wrong shape");
        require_same_mode(a, m);
        // M (k x n_i) against mode i; the new mode lands first, move it back.
        const std::pair<std::size_t, std::size_t> p{1, i};
        Tensor t = contract_pairs(m, cur, std::span(&p, 1));
        std::vector<std::size_t> perm;
        for (std::size_t j = 1; j <= i; ++j) perm.push_back(j);
        perm.push_back(0);
        for (std::size_t j = i + 1; j < d; ++j) perm.push_back(j);
        cur = permute(t, perm);
    }
    return cur;
}

}  // namespace tnrank
