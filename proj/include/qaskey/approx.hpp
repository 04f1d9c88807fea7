#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>

#include "qaskey/exact.hpp"

namespace qaskey {

/// Arbitrary-precision binary float with an explicit precision in bits.
///
/// The precision is fixed per computation context: combining two values of
/// different precision throws rather than silently rounding one side.
class ApproxScalar {
public:
    static constexpr long default_precision = 128;

    explicit ApproxScalar(long precision_bits = default_precision) {
        check_prec(precision_bits);
        mpfr_init2(v_, precision_bits);
        mpfr_set_zero(v_, 1);
    }
    ApproxScalar(const ApproxScalar& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    ApproxScalar(ApproxScalar&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    ApproxScalar& operator=(const ApproxScalar& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ApproxScalar& operator=(ApproxScalar&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~ApproxScalar() { mpfr_clear(v_); }

    static ApproxScalar from_long(long n, long prec = default_precision) {
        ApproxScalar r(prec);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }
    static ApproxScalar from_double(double d, long prec = default_precision) {
        ApproxScalar r(prec);
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    /// Rounds the real part of an exact scalar; rejects nonreal input.
    static ApproxScalar from_exact(const ExactScalar& x, long prec = default_precision) {
        if (!x.is_real())
            throw std::domain_error("ApproxScalar: cannot convert nonreal " + x.str());
        ApproxScalar r(prec);
        mpfr_set_q(r.v_, x.re().get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static ApproxScalar parse(const std::string& text);

    long precision_bits() const { return mpfr_get_prec(v_); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    ApproxScalar operator-() const {
        ApproxScalar r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    ApproxScalar& operator+=(const ApproxScalar& o) {
        match(o);
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ApproxScalar& operator-=(const ApproxScalar& o) {
        match(o);
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ApproxScalar& operator*=(const ApproxScalar& o) {
        match(o);
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ApproxScalar& operator/=(const ApproxScalar& o) {
        match(o);
        if (o.is_zero()) throw std::domain_error("ApproxScalar: division by zero");
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    friend ApproxScalar operator+(ApproxScalar a, const ApproxScalar& b) { return a += b; }
    friend ApproxScalar operator-(ApproxScalar a, const ApproxScalar& b) { return a -= b; }
    friend ApproxScalar operator*(ApproxScalar a, const ApproxScalar& b) { return a *= b; }
    friend ApproxScalar operator/(ApproxScalar a, const ApproxScalar& b) { return a /= b; }

    friend bool operator<(const ApproxScalar& a, const ApproxScalar& b) {
        a.match(b);
        return mpfr_less_p(a.v_, b.v_) != 0;
    }
    friend bool operator>(const ApproxScalar& a, const ApproxScalar& b) { return b < a; }
    friend bool operator<=(const ApproxScalar& a, const ApproxScalar& b) { return !(b < a); }
    friend bool operator>=(const ApproxScalar& a, const ApproxScalar& b) { return !(a < b); }
    friend bool operator==(const ApproxScalar& a, const ApproxScalar& b) {
        a.match(b);
        return mpfr_equal_p(a.v_, b.v_) != 0;
    }

    ApproxScalar abs() const {
        ApproxScalar r(*this);
        mpfr_abs(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    ApproxScalar sqrt() const {
        if (sign() < 0) throw std::domain_error("ApproxScalar: sqrt of negative value");
        ApproxScalar r(*this);
        mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    ApproxScalar pow_long(long e) const {
        ApproxScalar r(precision_bits());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }

    /// Decimal string with an explicit precision tag, e.g. "1.25e-3@128".
    std::string str() const {
        char* raw = nullptr;
        mpfr_asprintf(&raw, "%.*Rg", digits_for(precision_bits()), v_);
        std::string s(raw);
        mpfr_free_str(raw);
        return s + "@" + std::to_string(precision_bits());
    }

    /// |exact - this| as an ApproxScalar of this value's precision.
    ApproxScalar distance_to(const ExactScalar& x) const {
        return (*this - from_exact(x, precision_bits())).abs();
    }

private:
    static void check_prec(long p) {
        if (p < 2) throw std::invalid_argument("ApproxScalar: precision must be >= 2 bits");
    }
    static int digits_for(long prec) { return static_cast<int>(prec * 0.3011) + 3; }
    void match(const ApproxScalar& o) const {
        if (precision_bits() != o.precision_bits())
            throw std::invalid_argument(
                "ApproxScalar: mixed precision (" + std::to_string(precision_bits()) + " vs " +
                std::to_string(o.precision_bits()) + ")");
    }

    mpfr_t v_;
};

inline ApproxScalar ApproxScalar::parse(const std::string& text) {
    auto at = text.rfind('@');
    long prec = default_precision;
    std::string num = text;
    if (at != std::string::npos) {
        prec = std::stol(text.substr(at + 1));
        num = text.substr(0, at);
    }
    ApproxScalar r(prec);
    if (mpfr_set_str(r.v_, num.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("ApproxScalar: bad number '" + text + "'");
    return r;
}

/// Modulus |z| of an exact Gaussian rational, rounded to the given precision.
inline ApproxScalar approx_abs(const ExactScalar& z, long prec = ApproxScalar::default_precision) {
    ApproxScalar n(prec);
    ExactScalar nq(z.norm());
    return ApproxScalar::from_exact(nq, prec).sqrt();
}

} // namespace qaskey
