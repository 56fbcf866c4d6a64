#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tnrank {

using Complex = std::complex<double>;

/// Storage mode shared by every entry of a tensor.
enum class ScalarMode { exact, floating };

std::string_view to_string(ScalarMode mode);
ScalarMode parse_scalar_mode(std::string_view text);

/// Raised whenever two operands of different scalar modes meet.
class ModeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Complex number whose real and imaginary parts are arbitrary-precision
/// rationals. Arithmetic is error-free.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class re, mpq_class im = 0);

    /// Parses "p/q" (or "p") strings for each part.
    static GaussianRational parse(const std::string& re, const std::string& im = "0");

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    /// Round-to-nearest conversion of each part.
    Complex to_complex() const;

    std::string str() const;

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    /// Throws std::domain_error on a zero divisor.
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// Correctly rounded rational -> double.
double to_double_nearest(const mpq_class& q);

/// Parses "p/q", "p", or a plain decimal like "-0.25" into a canonical rational.
mpq_class parse_rational(const std::string& text);

}  // namespace tnrank
