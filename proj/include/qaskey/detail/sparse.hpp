#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qaskey/exact.hpp"

namespace qaskey::detail {

using Expo = std::vector<int>; // one exponent per variable

struct GradedLexExpoCmp {
    bool operator()(const Expo& a, const Expo& b) const {
        long da = std::accumulate(a.begin(), a.end(), 0L);
        long db = std::accumulate(b.begin(), b.end(), 0L);
        if (da != db) return da < db;
        return a < b;
    }
};

inline long expo_degree(const Expo& e) { return std::accumulate(e.begin(), e.end(), 0L); }

/// Number of distinct permutations of an exponent vector.
inline long orbit_size(const Expo& e) {
    std::map<int, int> mult;
    for (int x : e) mult[x]++;
    long num = 1, k = 0;
    auto binom = [](long n, long r) {
        long b = 1;
        for (long t = 1; t <= r; ++t) b = b * (n - r + t) / t;
        return b;
    };
    for (auto& [v, m] : mult) {
        k += m;
        num *= binom(k, m);
    }
    return num;
}

/// Sparse multivariate polynomial / truncated series over a coefficient ring.
/// The ring C needs +, -, *, is_zero(). A zero prototype is stored so that
/// rings with shape parameters (truncation degree, variable count) work too.
template <class C>
class SparsePoly {
public:
    SparsePoly(int nvars, C zero) : nvars_(nvars), zero_(std::move(zero)) {}

    template <class D = C>
        requires std::is_default_constructible_v<D>
    explicit SparsePoly(int nvars) : nvars_(nvars), zero_() {}

    int nvars() const { return nvars_; }
    const C& zero_proto() const { return zero_; }
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }
    const std::map<Expo, C, GradedLexExpoCmp>& terms() const { return t_; }

    long total_degree() const {
        long d = -1;
        for (auto& [e, c] : t_) d = std::max(d, expo_degree(e));
        return d;
    }

    void add_term(const Expo& e, const C& c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::invalid_argument("SparsePoly: exponent arity mismatch");
        if (c.is_zero()) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    C coeff(const Expo& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? zero_ : it->second;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (auto& [e, c] : o.t_) add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        for (auto& [e, c] : o.t_) {
            C neg = zero_;
            neg -= c;
            add_term(e, neg);
        }
        return *this;
    }

    /// Product, optionally truncating terms above max_total_degree (< 0: exact).
    static SparsePoly mul(const SparsePoly& a, const SparsePoly& b, long max_total_degree = -1) {
        SparsePoly r(a.nvars_, a.zero_);
        for (auto& [ea, ca] : a.t_) {
            long da = expo_degree(ea);
            for (auto& [eb, cb] : b.t_) {
                if (max_total_degree >= 0 && da + expo_degree(eb) > max_total_degree) continue;
                Expo e(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    SparsePoly truncated(long max_total_degree) const {
        SparsePoly r(nvars_, zero_);
        for (auto& [e, c] : t_)
            if (expo_degree(e) <= max_total_degree) r.t_.emplace(e, c);
        return r;
    }

    std::map<long, SparsePoly> homogeneous_components() const {
        std::map<long, SparsePoly> out;
        for (auto& [e, c] : t_) {
            long d = expo_degree(e);
            auto it = out.find(d);
            if (it == out.end()) it = out.emplace(d, SparsePoly(nvars_, zero_)).first;
            it->second.t_.emplace(e, c);
        }
        return out;
    }

    /// Exact division by (x_a - x_b); throws if the remainder is nonzero.
    SparsePoly divide_linear_diff(int a, int b) const {
        std::map<int, SparsePoly> layer; // by exponent of x_a, with that slot zeroed
        int dmax = 0;
        for (auto& [e, c] : t_) {
            int k = e[a];
            dmax = std::max(dmax, k);
            auto it = layer.find(k);
            if (it == layer.end()) it = layer.emplace(k, SparsePoly(nvars_, zero_)).first;
            Expo e0 = e;
            e0[a] = 0;
            it->second.t_.emplace(std::move(e0), c);
        }
        if (t_.empty()) return SparsePoly(nvars_, zero_);
        if (dmax == 0)
            throw std::domain_error("SparsePoly: nonzero remainder in (x_a - x_b) division");
        auto layer_at = [&](int k) -> SparsePoly {
            auto it = layer.find(k);
            return it == layer.end() ? SparsePoly(nvars_, zero_) : it->second;
        };
        auto shift_b = [&](const SparsePoly& p) {
            SparsePoly r(p.nvars_, p.zero_);
            for (auto& [e, c] : p.t_) {
                Expo e2 = e;
                e2[b] += 1;
                r.t_.emplace(std::move(e2), c);
            }
            return r;
        };

        std::vector<SparsePoly> quot(std::max(dmax, 1), SparsePoly(nvars_, zero_));
        SparsePoly carry = layer_at(dmax); // Q_{d-1} = P_d
        if (dmax >= 1) quot[dmax - 1] = carry;
        for (int k = dmax - 1; k >= 0; --k) {
            SparsePoly rk = layer_at(k);
            rk += shift_b(carry);
            if (k >= 1) {
                quot[k - 1] = rk;
                carry = std::move(rk);
            } else if (!rk.is_zero()) {
                throw std::domain_error("SparsePoly: nonzero remainder in (x_a - x_b) division");
            }
        }
        SparsePoly q(nvars_, zero_);
        for (int k = 0; k < static_cast<int>(quot.size()); ++k)
            for (auto& [e, c] : quot[k].t_) {
                Expo e2 = e;
                e2[a] += k;
                q.t_.emplace(std::move(e2), c);
            }
        return q;
    }

    /// Exact division by the Vandermonde prod_{i<j}(x_i - x_j).
    SparsePoly divide_vandermonde() const {
        SparsePoly r = *this;
        for (int i = 0; i < nvars_; ++i)
            for (int j = i + 1; j < nvars_; ++j) r = r.divide_linear_diff(i, j);
        return r;
    }

    /// Vandermonde division of a truncated series, done per homogeneous
    /// component so truncation never corrupts the quotient.
    SparsePoly divide_vandermonde_graded() const {
        SparsePoly r(nvars_, zero_);
        for (auto& [d, comp] : homogeneous_components()) {
            SparsePoly q = comp.divide_vandermonde();
            for (auto& [e, c] : q.terms()) r.add_term(e, c);
        }
        return r;
    }

private:
    int nvars_;
    C zero_;
    std::map<Expo, C, GradedLexExpoCmp> t_;
};

/// Exact determinant by Gaussian elimination over the field.
inline ExactScalar det_exact(std::vector<std::vector<ExactScalar>> m) {
    size_t n = m.size();
    for (auto& row : m)
        if (row.size() != n) throw std::invalid_argument("det_exact: not square");
    ExactScalar det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return ExactScalar(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        ExactScalar inv = m[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            ExactScalar f = m[r][col] * inv;
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/// Parity of a permutation given as a 0..n-1 vector: +1 or -1.
inline int permutation_sign(const std::vector<int>& perm) {
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

} // namespace qaskey::detail
