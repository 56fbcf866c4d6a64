#include "tnrank/scalar.hpp"

#include <mpfr.h>

#include <cctype>

namespace tnrank {

std::string_view to_string(ScalarMode mode) {
    return mode == ScalarMode::exact ? "exact" : "float";
}

ScalarMode parse_scalar_mode(std::string_view text) {
    if (text == "exact") return ScalarMode::exact;
    if (text == "float") return ScalarMode::floating;
    throw std::invalid_argument("unknown scalar mode '" + std::string(text) + "'");
}

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::parse(const std::string& re, const std::string& im) {
    return {parse_rational(re), parse_rational(im)};
}

Complex GaussianRational::to_complex() const {
    return {to_double_nearest(re_), to_double_nearest(im_)};
}

std::string GaussianRational::str() const {
    if (is_real()) return re_.get_str();
    return re_.get_str() + (sgn(im_) < 0 ? "" : "+") + im_.get_str() + "i";
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (o.is_real()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.is_real()) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    const mpq_class n = o.norm2();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

double to_double_nearest(const mpq_class& q) {
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
    const double out = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return out;
}

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational '" + text + "'");
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    }
    // Terminating decimal: "-12.375" -> -12375/1000.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const bool sign = i == 0 && (digits[i] == '-' || digits[i] == '+');
        if (!sign && !std::isdigit(static_cast<unsigned char>(digits[i]))) {
            throw std::invalid_argument("malformed decimal '" + text + "'");
        }
    }
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace tnrank
