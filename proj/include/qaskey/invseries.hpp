#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "qaskey/detail/sparse.hpp"
#include "qaskey/exact.hpp"
#include "qaskey/partition.hpp"

namespace qaskey {

/// Symmetric power series in y_1^{-1},...,y_K^{-1}, truncated at a total
/// degree D. Keys are partitions (monomial symmetric basis in v_i = y_i^{-1});
/// the coefficient ring is pluggable: ExactScalar, or a module over it.
template <class C>
class InvSeries {
public:
    InvSeries(int nvars, long maxdeg, C zero)
        : nvars_(nvars), maxdeg_(maxdeg), zero_(std::move(zero)) {
        if (nvars < 1) throw std::invalid_argument("InvSeries: need at least one variable");
        if (maxdeg < 0) throw std::invalid_argument("InvSeries: negative truncation degree");
    }

    template <class D = C>
        requires std::is_default_constructible_v<D>
    InvSeries(int nvars, long maxdeg) : InvSeries(nvars, maxdeg, D()) {}

    int nvars() const { return nvars_; }
    long max_degree() const { return maxdeg_; }
    const C& zero_proto() const { return zero_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Partition, C>& terms() const { return t_; }

    void add_term(const Partition& key, const C& c) {
        if (key.length() > nvars_) throw std::invalid_argument("InvSeries: key arity too large");
        if (key.size() > maxdeg_) return;
        if (c.is_zero()) return;
        auto it = t_.find(key);
        if (it == t_.end()) {
            t_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    C coeff(const Partition& key) const {
        auto it = t_.find(key);
        return it == t_.end() ? zero_ : it->second;
    }

    InvSeries& operator+=(const InvSeries& o) {
        check(o);
        maxdeg_ = std::min(maxdeg_, o.maxdeg_);
        prune();
        for (auto& [k, c] : o.t_) add_term(k, c);
        return *this;
    }
    InvSeries& operator-=(const InvSeries& o) {
        check(o);
        maxdeg_ = std::min(maxdeg_, o.maxdeg_);
        prune();
        for (auto& [k, c] : o.t_) {
            C neg = zero_;
            neg -= c;
            add_term(k, neg);
        }
        return *this;
    }
    friend InvSeries operator+(InvSeries a, const InvSeries& b) { return a += b; }
    friend InvSeries operator-(InvSeries a, const InvSeries& b) { return a -= b; }

    /// Scale every coefficient by a ring element (or module scalar).
    template <class S>
    InvSeries scaled(const S& s) const {
        InvSeries r(nvars_, maxdeg_, zero_);
        for (auto& [k, c] : t_) {
            C v = c;
            v *= s;
            r.add_term(k, v);
        }
        return r;
    }

    friend bool operator==(const InvSeries& a, const InvSeries& b) {
        return a.nvars_ == b.nvars_ && a.t_ == b.t_;
    }

    /// Product in the monomial symmetric basis, truncated at min(Da, Db).
    friend InvSeries operator*(const InvSeries& A, const InvSeries& B) {
        A.check(B);
        long D = std::min(A.maxdeg_, B.maxdeg_);
        int K = A.nvars_;
        InvSeries r(K, D, A.zero_);
        for (auto& [la, ca] : A.t_) {
            std::vector<int> la_vec = la.padded(K);
            for (auto& [mu, cb] : B.t_) {
                if (la.size() + mu.size() > D) continue;
                C c = ca;
                c *= cb;
                std::vector<int> beta = mu.padded(K);
                std::sort(beta.begin(), beta.end());
                std::vector<Partition> cands;
                do {
                    std::vector<int> nu(K);
                    for (int i = 0; i < K; ++i) nu[i] = la_vec[i] + beta[i];
                    Partition key = Partition::sorted(std::move(nu));
                    if (std::find(cands.begin(), cands.end(), key) == cands.end())
                        cands.push_back(key);
                } while (std::next_permutation(beta.begin(), beta.end()));
                for (const Partition& nu : cands) {
                    std::vector<int> nu_vec = nu.padded(K);
                    long count = 0;
                    std::sort(beta.begin(), beta.end());
                    do {
                        std::vector<int> alpha(K);
                        bool ok = true;
                        for (int i = 0; i < K && ok; ++i) {
                            alpha[i] = nu_vec[i] - beta[i];
                            if (alpha[i] < 0) ok = false;
                        }
                        if (!ok) continue;
                        std::sort(alpha.begin(), alpha.end(), std::greater<int>());
                        if (alpha == la_vec) ++count;
                    } while (std::next_permutation(beta.begin(), beta.end()));
                    if (count > 0) {
                        C v = c;
                        v *= ExactScalar(count);
                        r.add_term(nu, v);
                    }
                }
            }
        }
        return r;
    }

    /// y_K -> infinity: keep the monomials free of v_K, one variable fewer.
    InvSeries drop_last_variable() const {
        if (nvars_ < 2) throw std::domain_error("InvSeries: cannot drop below one variable");
        InvSeries r(nvars_ - 1, maxdeg_, zero_);
        for (auto& [k, c] : t_)
            if (k.length() <= nvars_ - 1) r.add_term(k, c);
        return r;
    }

    InvSeries truncated(long maxdeg) const {
        InvSeries r(nvars_, std::min(maxdeg, maxdeg_), zero_);
        for (auto& [k, c] : t_)
            if (k.size() <= r.maxdeg_) r.t_.emplace(k, c);
        return r;
    }

    /// Collects a symmetric SparsePoly into the partition-keyed basis.
    static InvSeries from_sparse(const detail::SparsePoly<C>& p, long maxdeg) {
        InvSeries r(p.nvars(), maxdeg, p.zero_proto());
        for (auto& [e, c] : p.terms()) {
            bool sorted_desc = true;
            for (size_t i = 0; i + 1 < e.size(); ++i)
                if (e[i] < e[i + 1]) {
                    sorted_desc = false;
                    break;
                }
            if (!sorted_desc) continue;
            std::vector<int> key = e;
            while (!key.empty() && key.back() == 0) key.pop_back();
            r.add_term(Partition(key), c);
        }
        return r;
    }

private:
    void check(const InvSeries& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("InvSeries: variable count mismatch");
    }
    void prune() {
        for (auto it = t_.begin(); it != t_.end();)
            it = (it->first.size() > maxdeg_) ? t_.erase(it) : std::next(it);
    }

    int nvars_;
    long maxdeg_;
    C zero_;
    std::map<Partition, C> t_;
};

namespace detail {

/// Coefficients of 1/(y | d_0,...,d_{m-1})^m as a series in v = 1/y,
/// truncated at v^maxdeg: v^m * prod_{k<m} sum_t d_k^t v^t.
inline std::vector<ExactScalar> inverse_newton_series(std::span<const ExactScalar> nodes, long m,
                                                      long maxdeg) {
    if (m > maxdeg) return {};
    long body = maxdeg - m;
    std::vector<ExactScalar> acc{ExactScalar(1)};
    acc.resize(body + 1, ExactScalar(0));
    for (long k = 0; k < m; ++k) {
        // multiply by 1/(1 - d_k v) = sum_t d_k^t v^t, truncated
        std::vector<ExactScalar> next(body + 1, ExactScalar(0));
        for (long a = 0; a <= body; ++a) {
            if (acc[a].is_zero()) continue;
            ExactScalar pw(1);
            for (long t = 0; a + t <= body; ++t) {
                next[a + t] += acc[a] * pw;
                pw *= nodes[k];
            }
        }
        acc = std::move(next);
    }
    std::vector<ExactScalar> out(maxdeg + 1, ExactScalar(0));
    for (long t = 0; t <= body; ++t) out[m + t] = acc[t];
    return out;
}

/// det[ rows[i](v_{pi(i)}) ] over all permutations, rows given as univariate
/// v-series, result truncated at total degree maxdeg.
inline SparsePoly<ExactScalar> series_determinant(
    const std::vector<std::vector<ExactScalar>>& rows, int K, long maxdeg) {
    SparsePoly<ExactScalar> det(K);
    std::vector<int> perm(K);
    for (int i = 0; i < K; ++i) perm[i] = i;
    Expo e(K, 0);
    do {
        int sign = permutation_sign(perm);
        auto rec = [&](auto&& self, int i, long budget, const ExactScalar& coeff) -> void {
            if (i == K) {
                det.add_term(e, sign > 0 ? coeff : -coeff);
                return;
            }
            const auto& row = rows[i];
            long top = std::min<long>(budget, static_cast<long>(row.size()) - 1);
            for (long t = 0; t <= top; ++t) {
                if (row[t].is_zero()) continue;
                e[perm[i]] = static_cast<int>(t);
                self(self, i + 1, budget - t, coeff * row[t]);
            }
            e[perm[i]] = 0;
        };
        rec(rec, 0, maxdeg, ExactScalar(1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace detail

/// Dual Schur function sigma_{mu|K}(y | d_0, d_1, ...) as a truncated series
/// in the v_i = y_i^{-1}: the ratio of the two inverse-Newton determinants,
/// computed by dividing both by the Vandermonde in v and inverting the
/// normalized denominator 1 + u by a geometric series. Exact below degree D.
inline InvSeries<ExactScalar> dual_schur(const Partition& mu, int K,
                                         std::span<const ExactScalar> nodes, long D) {
    if (mu.length() > K) return InvSeries<ExactScalar>(K, D); // zero by convention
    long g = static_cast<long>(K) * (K - 1) / 2;
    long T = D + g;
    long need = mu.part(0) + K - 1;
    if (static_cast<long>(nodes.size()) < need)
        throw std::invalid_argument("dual_schur: not enough nodes");

    std::vector<std::vector<ExactScalar>> num_rows, den_rows;
    for (int i = 1; i <= K; ++i) {
        num_rows.push_back(detail::inverse_newton_series(nodes, mu.part(i - 1) + K - i, T));
        den_rows.push_back(detail::inverse_newton_series(nodes, K - i, T));
    }
    auto num = detail::series_determinant(num_rows, K, T).divide_vandermonde_graded();
    auto den = detail::series_determinant(den_rows, K, T).divide_vandermonde_graded();

    // den = 1 + u with u of positive degree; invert by geometric series.
    detail::SparsePoly<ExactScalar> u = den;
    {
        detail::Expo zero_e(K, 0);
        ExactScalar c0 = u.coeff(zero_e);
        if (!(c0 == ExactScalar(1)))
            throw std::domain_error("dual_schur: denominator not normalized");
        c0 = -c0;
        u.add_term(zero_e, c0); // u = den - 1
    }
    detail::SparsePoly<ExactScalar> inv(K);
    {
        detail::Expo zero_e(K, 0);
        inv.add_term(zero_e, ExactScalar(1));
        detail::SparsePoly<ExactScalar> upow = u;
        for (long t = 1; t <= D && !upow.is_zero(); ++t) {
            if (t % 2 == 1)
                inv -= upow;
            else
                inv += upow;
            upow = detail::SparsePoly<ExactScalar>::mul(upow, u, D);
        }
    }
    auto sigma = detail::SparsePoly<ExactScalar>::mul(num.truncated(D), inv, D);
    return InvSeries<ExactScalar>::from_sparse(sigma, D);
}

inline InvSeries<ExactScalar> dual_schur(const Partition& mu, int K,
                                         const std::vector<ExactScalar>& nodes, long D) {
    return dual_schur(mu, K, std::span<const ExactScalar>(nodes), D);
}

/// An ExactScalar-coefficient series scaled by an element of a module over
/// ExactScalar, producing a series with module coefficients.
template <class C>
InvSeries<C> scale_series_by(const InvSeries<ExactScalar>& s, const C& m, const C& zero) {
    InvSeries<C> r(s.nvars(), s.max_degree(), zero);
    for (auto& [k, c] : s.terms()) {
        C v = m;
        v *= c;
        r.add_term(k, v);
    }
    return r;
}

/// Solves sum_mu I_mu * sigma_mu = rhs for the unknown coefficients I_mu,
/// degree by degree, using that sigma_mu = S_mu(v) + higher-degree terms.
/// The unknowns live in any module over ExactScalar (same ring as rhs).
/// A full residual recheck at the end guards the triangular bookkeeping.
template <class C>
std::map<Partition, C> invseries_solve_triangular(
    const InvSeries<C>& rhs, const std::map<Partition, InvSeries<ExactScalar>>& basis) {
    int K = rhs.nvars();
    long D = rhs.max_degree();
    for (const Partition& mu : enumerate_partitions(K, static_cast<int>(D), D))
        if (basis.find(mu) == basis.end())
            throw std::invalid_argument("invseries_solve_triangular: basis misses " + mu.str());

    std::map<Partition, C> out;
    InvSeries<C> R = rhs; // working remainder
    for (long d = 0; d <= D; ++d) {
        std::vector<Partition> level;
        for (const Partition& mu : enumerate_partitions(K, static_cast<int>(d), d))
            if (mu.size() == d) level.push_back(mu);
        std::sort(level.begin(), level.end(),
                  [](const Partition& a, const Partition& b) { return b < a; }); // lex-descending
        for (const Partition& mu : level) {
            C c = R.coeff(mu);
            out.emplace(mu, c);
            if (c.is_zero()) continue;
            R -= scale_series_by(basis.at(mu), c, rhs.zero_proto());
        }
    }
    if (!R.is_zero())
        throw std::domain_error("invseries_solve_triangular: nonzero residual (degree mismatch)");

    // independent recheck: reassemble and compare
    InvSeries<C> rebuilt(K, D, rhs.zero_proto());
    for (auto& [mu, c] : out) {
        if (c.is_zero()) continue;
        rebuilt += scale_series_by(basis.at(mu), c, rhs.zero_proto());
    }
    if (!(rebuilt == rhs))
        throw std::domain_error("invseries_solve_triangular: residual recheck failed");
    return out;
}

} // namespace qaskey
