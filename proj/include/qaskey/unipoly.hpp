#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaskey/exact.hpp"

namespace qaskey {

/// Dense univariate polynomial over ExactScalar, lowest degree first.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(ExactScalar constant) {
        if (!constant.is_zero()) c_.push_back(std::move(constant));
    }
    explicit UniPoly(std::vector<ExactScalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly one() { return UniPoly(ExactScalar(1)); }
    static UniPoly x() { return UniPoly(std::vector<ExactScalar>{ExactScalar(0), ExactScalar(1)}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    ExactScalar coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : ExactScalar(0);
    }
    const ExactScalar& leading() const {
        if (is_zero()) throw std::domain_error("UniPoly: zero polynomial has no leading coeff");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && leading().is_one(); }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    UniPoly& operator+=(const UniPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), ExactScalar(0));
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) { return *this += -o; }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<ExactScalar> r(a.c_.size() + b.c_.size() - 1, ExactScalar(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const ExactScalar& s, UniPoly p) {
        for (auto& a : p.c_) a *= s;
        p.trim();
        return p;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    ExactScalar eval(const ExactScalar& x) const {
        ExactScalar acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// p(alpha * x): multiplies coeff_k by alpha^k.
    UniPoly scale_argument(const ExactScalar& alpha) const {
        UniPoly r = *this;
        ExactScalar pw(1);
        for (auto& a : r.c_) {
            a *= pw;
            pw *= alpha;
        }
        r.trim();
        return r;
    }

    /// Componentwise map coeff_k -> coeff_k * factor^(degree-k); used for the
    /// q-power renormalizations of the multivariate constructions.
    UniPoly scale_from_top(const ExactScalar& factor) const {
        UniPoly r = *this;
        ExactScalar pw(1);
        for (auto it = r.c_.rbegin(); it != r.c_.rend(); ++it) {
            *it *= pw;
            pw *= factor;
        }
        r.trim();
        return r;
    }

    bool has_real_coeffs() const {
        for (const auto& a : c_)
            if (!a.is_real()) return false;
        return true;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            if (coeff(k).is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + coeff(k).str() + ")";
            if (k > 0) s += "*x^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<ExactScalar> c_;
};

/// Newton factorial power (x | c_0, c_1, ...)^m = (x-c_0)...(x-c_{m-1});
/// monic of degree m, 1 for m = 0.
inline UniPoly newton_power(std::span<const ExactScalar> nodes, long m) {
    if (m < 0) throw std::invalid_argument("newton_power: negative degree");
    if (static_cast<long>(nodes.size()) < m)
        throw std::invalid_argument("newton_power: need at least m nodes");
    UniPoly r = UniPoly::one();
    for (long k = 0; k < m; ++k) r = r * (UniPoly::x() - UniPoly(nodes[k]));
    return r;
}

inline UniPoly newton_power(const std::vector<ExactScalar>& nodes, long m) {
    return newton_power(std::span<const ExactScalar>(nodes), m);
}

} // namespace qaskey
