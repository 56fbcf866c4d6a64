#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "tnrank/scalar.hpp"

namespace tnrank {

using Shape = std::vector<std::size_t>;

/// Error for ill-shaped operands (extent mismatch, bad permutation, ...).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::size_t shape_size(const Shape& dims);

/// Dense row-major tensor (last index fastest). Indices are 0-based in the
/// C++ API; file formats and the CLI use 1-based indices.
///
/// An order-0 tensor holds a single scalar. Values are immutable once built;
/// every operation returns a new tensor.
class Tensor {
public:
    using ExactData = std::vector<GaussianRational>;
    using FloatData = std::vector<Complex>;

    Tensor() : Tensor(Shape{}, FloatData{Complex{}}) {}
    Tensor(Shape dims, ExactData data);
    Tensor(Shape dims, FloatData data);

    static Tensor zeros(Shape dims, ScalarMode mode);
    /// Standard basis vector e_i of length n.
    static Tensor basis_vector(std::size_t n, std::size_t i, ScalarMode mode);
    static Tensor identity(std::size_t n, ScalarMode mode);

    ScalarMode mode() const { return data_.index() == 0 ? ScalarMode::exact : ScalarMode::floating; }
    const Shape& dims() const { return dims_; }
    std::size_t order() const { return dims_.size(); }
    std::size_t size() const;
    std::size_t dim(std::size_t mode) const { return dims_.at(mode); }

    const ExactData& exact() const;
    const FloatData& floating() const;

    template <class T>
    const std::vector<T>& data() const {
        if (!std::holds_alternative<std::vector<T>>(data_)) throw ModeMismatch("tensor holds the other scalar mode");
        return std::get<std::vector<T>>(data_);
    }

    /// Calls f(const std::vector<T>&) with the active storage.
    template <class F>
    decltype(auto) visit(F&& f) const {
        return std::visit(std::forward<F>(f), data_);
    }

    std::size_t offset(std::span<const std::size_t> index) const;

    Tensor reshape(Shape dims) const;
    /// Explicit exact -> float conversion (round to nearest). Float input is returned unchanged.
    Tensor to_float() const;

    bool is_zero() const;
    double frobenius_norm() const;
    /// Largest entry modulus.
    double max_abs() const;

    friend bool operator==(const Tensor& a, const Tensor& b);
    friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

private:
    Shape dims_;
    std::variant<ExactData, FloatData> data_;
};

/// Throws ModeMismatch unless both tensors share a scalar mode.
void require_same_mode(const Tensor& a, const Tensor& b);

// Elementwise arithmetic (same dims, same mode).
Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, const GaussianRational& c);
Tensor scale(const Tensor& a, Complex c);

/// Frobenius norm of a - b divided by the norm of b (or the absolute norm if b = 0).
double relative_error(const Tensor& a, const Tensor& b);

/// dims = dims(a) ++ dims(b); entry (i, j) = a(i) b(j).
Tensor outer(const Tensor& a, const Tensor& b);

/// Sums over the paired modes. Result modes: unpaired modes of a (ascending)
/// followed by unpaired modes of b (ascending). Mode numbers are 0-based.
Tensor contract_pairs(const Tensor& a, const Tensor& b,
                      std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// result(i_{perm[0]}, ..., i_{perm[d-1]}) = a(i_0, ..., i_{d-1}); result mode j
/// is input mode perm[j] (numpy.transpose convention).
Tensor permute(const Tensor& a, std::span<const std::size_t> perm);

/// Matrix whose rows are indexed by row_modes (sorted ascending, row-major)
/// and columns by the complementary modes (ascending).
Tensor flatten(const Tensor& a, std::span<const std::size_t> row_modes);

/// Multilinear multiplication: mode i transformed by the matrix ms[i]
/// (ms[i].dims() = {k_i, n_i}).
Tensor mlmul(const Tensor& a, std::span<const Tensor> ms);

/// Matrix product of two order-2 tensors.
Tensor matmul(const Tensor& a, const Tensor& b);

}  // namespace tnrank
