#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace qaskey {

/// Gaussian rational a + b*i with arbitrary-precision rational parts.
///
/// This is the coefficient field for every exact identity in the library.
/// Arithmetic never rounds; denominators are kept positive and in lowest
/// terms by GMP's canonical representation.
class ExactScalar {
public:
    ExactScalar() : re_(0), im_(0) {}
    ExactScalar(long n) : re_(n), im_(0) {}
    ExactScalar(long num, long den) : re_(num), im_(0) {
        if (den == 0) throw std::invalid_argument("ExactScalar: zero denominator");
        re_ /= mpq_class(den);
    }
    explicit ExactScalar(mpq_class re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }
    ExactScalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static ExactScalar i() { return ExactScalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_integer() const { return is_real() && re_.get_den() == 1; }

    ExactScalar conj() const { return ExactScalar(re_, -im_); }

    /// re^2 + im^2, a nonnegative rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    ExactScalar operator-() const { return ExactScalar(-re_, -im_); }

    ExactScalar& operator+=(const ExactScalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ExactScalar& operator-=(const ExactScalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ExactScalar& operator*=(const ExactScalar& o) {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    ExactScalar& operator/=(const ExactScalar& o) {
        if (o.is_zero()) throw std::domain_error("ExactScalar: division by zero");
        if (o.is_real()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        mpq_class n = o.norm();
        ExactScalar num = *this * o.conj();
        re_ = num.re_ / n;
        im_ = num.im_ / n;
        return *this;
    }

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    ExactScalar inverse() const {
        ExactScalar one(1);
        return one / *this;
    }

    /// Integer power, negative exponents allowed for nonzero values.
    ExactScalar pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        ExactScalar acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    // Order comparisons are only defined on the real line.
    int sign() const {
        require_real("sign");
        return sgn(re_);
    }
    friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
        a.require_real("<");
        b.require_real("<");
        return a.re_ < b.re_;
    }
    friend bool operator>(const ExactScalar& a, const ExactScalar& b) { return b < a; }
    friend bool operator<=(const ExactScalar& a, const ExactScalar& b) { return !(b < a); }
    friend bool operator>=(const ExactScalar& a, const ExactScalar& b) { return !(a < b); }

    ExactScalar abs() const {
        require_real("abs");
        return ExactScalar(::abs(re_));
    }

    /// Serializes as "p/q" or "p/q+r/s*i" (minus sign folded into the parts).
    std::string str() const {
        if (is_real()) return re_.get_str();
        std::string s;
        if (sgn(re_) != 0) s += re_.get_str();
        if (sgn(im_) > 0 && !s.empty()) s += "+";
        if (im_ == -1)
            s += "-";
        else if (im_ != 1)
            s += im_.get_str() + "*";
        s += "i";
        return s;
    }

    static ExactScalar parse(const std::string& text);

private:
    void require_real(const char* op) const {
        if (!is_real())
            throw std::domain_error(std::string("ExactScalar: '") + op +
                                    "' needs a real value, got " + str());
    }

    mpq_class re_, im_;
};

namespace detail {

inline mpq_class parse_rational(std::string s) {
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    if (s.empty()) throw std::invalid_argument("ExactScalar: empty rational");
    mpq_class v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("ExactScalar: bad rational '" + s + "'");
    if (sgn(v.get_den()) == 0) throw std::invalid_argument("ExactScalar: zero denominator in '" + s + "'");
    v.canonicalize();
    return v;
}

} // namespace detail

/// Accepts "p/q", "n", "p/q+r/s*i", "p/q-r/s*i", "r/s*i", "i", "-i".
inline ExactScalar ExactScalar::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("ExactScalar: empty string");

    // Split at the last top-level '+'/'-' (not at position 0).
    size_t split = std::string::npos;
    for (size_t k = 1; k < s.size(); ++k)
        if (s[k] == '+' || s[k] == '-') split = k;

    auto parse_imag = [](std::string t) -> mpq_class {
        // t ends with "i", optionally "*i"; bare "i" or "-i" mean +/-1.
        t.pop_back();
        if (!t.empty() && t.back() == '*') t.pop_back();
        if (t.empty() || t == "+") return mpq_class(1);
        if (t == "-") return mpq_class(-1);
        return detail::parse_rational(t);
    };

    if (s.back() == 'i') {
        if (split == std::string::npos) return ExactScalar(mpq_class(0), parse_imag(s));
        std::string re_part = s.substr(0, split);
        std::string im_part = s.substr(split); // keeps the sign
        return ExactScalar(detail::parse_rational(re_part), parse_imag(im_part));
    }
    return ExactScalar(detail::parse_rational(s));
}

/// Shorthand used throughout tests and the CLI.
inline ExactScalar operator""_q(const char* s, size_t) { return ExactScalar::parse(s); }

} // namespace qaskey
