#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "qaskey/detail/sparse.hpp"
#include "qaskey/exact.hpp"
#include "qaskey/partition.hpp"
#include "qaskey/unipoly.hpp"

namespace qaskey {

/// N-variate symmetric polynomial with exact coefficients, stored in the
/// monomial symmetric basis: keys are partitions of length <= N, so
/// symmetry is structural rather than checked term by term.
class MultiSymPoly {
public:
    explicit MultiSymPoly(int nvars) : nvars_(nvars) {
        if (nvars < 0) throw std::invalid_argument("MultiSymPoly: negative variable count");
    }
    static MultiSymPoly constant(int nvars, const ExactScalar& c) {
        MultiSymPoly r(nvars);
        r.add_term({}, c);
        return r;
    }
    static MultiSymPoly one(int nvars) { return constant(nvars, ExactScalar(1)); }

    int nvars() const { return nvars_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Partition, ExactScalar>& terms() const { return t_; }

    long degree() const {
        long d = is_zero() ? -1 : 0;
        for (auto& [k, c] : t_) d = std::max(d, k.size());
        return d;
    }

    void add_term(const Partition& key, const ExactScalar& c) {
        if (key.length() > nvars_)
            throw std::invalid_argument("MultiSymPoly: key longer than variable count");
        if (c.is_zero()) return;
        auto it = t_.find(key);
        if (it == t_.end()) {
            t_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    ExactScalar coeff(const Partition& key) const {
        auto it = t_.find(key);
        return it == t_.end() ? ExactScalar(0) : it->second;
    }

    MultiSymPoly operator-() const {
        MultiSymPoly r(nvars_);
        for (auto& [k, c] : t_) r.t_.emplace(k, -c);
        return r;
    }
    MultiSymPoly& operator+=(const MultiSymPoly& o) {
        check_vars(o);
        for (auto& [k, c] : o.t_) add_term(k, c);
        return *this;
    }
    MultiSymPoly& operator-=(const MultiSymPoly& o) {
        check_vars(o);
        for (auto& [k, c] : o.t_) add_term(k, -c);
        return *this;
    }
    MultiSymPoly& operator*=(const ExactScalar& s) {
        if (s.is_zero()) {
            t_.clear();
            return *this;
        }
        for (auto& [k, c] : t_) c *= s;
        return *this;
    }
    friend MultiSymPoly operator+(MultiSymPoly a, const MultiSymPoly& b) { return a += b; }
    friend MultiSymPoly operator-(MultiSymPoly a, const MultiSymPoly& b) { return a -= b; }
    friend MultiSymPoly operator*(const ExactScalar& s, MultiSymPoly p) { return p *= s; }

    friend bool operator==(const MultiSymPoly& a, const MultiSymPoly& b) {
        return a.nvars_ == b.nvars_ && a.t_ == b.t_;
    }
    friend bool operator!=(const MultiSymPoly& a, const MultiSymPoly& b) { return !(a == b); }

    /// m_la * m_mu in the monomial basis. The coefficient of m_nu is the
    /// number of distinct permutations beta of mu with sort(nu - beta) = la.
    friend MultiSymPoly operator*(const MultiSymPoly& A, const MultiSymPoly& B) {
        A.check_vars(B);
        int N = A.nvars_;
        MultiSymPoly r(N);
        for (auto& [la, ca] : A.t_) {
            std::vector<int> la_vec = la.padded(N);
            for (auto& [mu, cb] : B.t_) {
                ExactScalar c = ca * cb;
                std::vector<int> beta = mu.padded(N);
                std::sort(beta.begin(), beta.end());
                // Pass 1: candidate result keys.
                std::vector<Partition> cands;
                do {
                    std::vector<int> nu(N);
                    for (int i = 0; i < N; ++i) nu[i] = la_vec[i] + beta[i];
                    Partition key = Partition::sorted(std::move(nu));
                    if (std::find(cands.begin(), cands.end(), key) == cands.end())
                        cands.push_back(key);
                } while (std::next_permutation(beta.begin(), beta.end()));
                // Pass 2: count contributions to each candidate.
                for (const Partition& nu : cands) {
                    std::vector<int> nu_vec = nu.padded(N);
                    long count = 0;
                    std::sort(beta.begin(), beta.end());
                    do {
                        std::vector<int> alpha(N);
                        bool ok = true;
                        for (int i = 0; i < N && ok; ++i) {
                            alpha[i] = nu_vec[i] - beta[i];
                            if (alpha[i] < 0) ok = false;
                        }
                        if (!ok) continue;
                        std::sort(alpha.begin(), alpha.end(), std::greater<int>());
                        if (alpha == la_vec) ++count;
                    } while (std::next_permutation(beta.begin(), beta.end()));
                    if (count > 0) r.add_term(nu, ExactScalar(count) * c);
                }
            }
        }
        return r;
    }

    /// F(c*x): degree-k homogeneous part picks up c^k.
    MultiSymPoly scale_argument(const ExactScalar& c) const {
        MultiSymPoly r(nvars_);
        for (auto& [k, v] : t_) r.add_term(k, v * c.pow(k.size()));
        return r;
    }

    ExactScalar eval(std::span<const ExactScalar> x) const {
        if (static_cast<int>(x.size()) != nvars_)
            throw std::invalid_argument("MultiSymPoly: wrong evaluation arity");
        int maxe = 0;
        for (auto& [k, c] : t_) maxe = std::max(maxe, k.part(0));
        std::vector<std::vector<ExactScalar>> pow(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            pow[i].resize(maxe + 1, ExactScalar(1));
            for (int e = 1; e <= maxe; ++e) pow[i][e] = pow[i][e - 1] * x[i];
        }
        ExactScalar acc(0);
        for (auto& [k, c] : t_) {
            std::vector<int> a = k.padded(nvars_);
            std::sort(a.begin(), a.end());
            ExactScalar orbit_sum(0);
            do {
                ExactScalar term(1);
                for (int i = 0; i < nvars_; ++i)
                    if (a[i] > 0) term *= pow[i][a[i]];
                orbit_sum += term;
            } while (std::next_permutation(a.begin(), a.end()));
            acc += c * orbit_sum;
        }
        return acc;
    }

    ExactScalar eval(const std::vector<ExactScalar>& x) const {
        return eval(std::span<const ExactScalar>(x));
    }

    /// Substitute the last variable by a scalar; result lives in N-1 variables.
    MultiSymPoly substitute_last(const ExactScalar& value) const {
        if (nvars_ == 0) throw std::domain_error("MultiSymPoly: no variable to substitute");
        MultiSymPoly r(nvars_ - 1);
        for (auto& [k, c] : t_) {
            std::vector<int> full = k.padded(nvars_);
            std::vector<int> seen;
            for (int v : full) {
                if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
                seen.push_back(v);
                std::vector<int> rest;
                bool removed = false;
                for (int w : full) {
                    if (!removed && w == v) {
                        removed = true;
                        continue;
                    }
                    rest.push_back(w);
                }
                r.add_term(Partition::sorted(std::move(rest)), c * value.pow(v));
            }
        }
        return r;
    }

    MultiSymPoly homogeneous_component(long d) const {
        MultiSymPoly r(nvars_);
        for (auto& [k, c] : t_)
            if (k.size() == d) r.t_.emplace(k, c);
        return r;
    }
    MultiSymPoly top_homogeneous() const { return homogeneous_component(degree()); }
    MultiSymPoly truncated(long maxdeg) const {
        MultiSymPoly r(nvars_);
        for (auto& [k, c] : t_)
            if (k.size() <= maxdeg) r.t_.emplace(k, c);
        return r;
    }

    /// Reads a symmetric SparsePoly off its sorted-exponent representatives.
    /// A term-count check guards against accidentally nonsymmetric input.
    static MultiSymPoly from_sparse(const detail::SparsePoly<ExactScalar>& p) {
        MultiSymPoly r(p.nvars());
        long expected = 0;
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
            expected += detail::orbit_size(e);
        }
        if (expected != static_cast<long>(p.term_count()))
            throw std::domain_error("MultiSymPoly: input polynomial is not symmetric");
        return r;
    }

private:
    void check_vars(const MultiSymPoly& o) const {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("MultiSymPoly: variable count mismatch");
    }

    int nvars_;
    std::map<Partition, ExactScalar> t_;
};

// ---- Kostka numbers and Schur polynomials ----

namespace detail {

/// Number of semistandard tableaux of shape mu and content nu (a partition;
/// Kostka numbers are invariant under permuting the content).
inline long kostka_number(const Partition& mu, const Partition& nu) {
    if (mu.size() != nu.size()) return 0;
    if (mu.empty()) return 1;
    static std::map<std::pair<std::vector<int>, std::vector<int>>, long> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({mu.parts(), nu.parts()});
        if (it != cache.end()) return it->second;
    }
    // Strip the largest entry r of the content: it fills a horizontal strip.
    int r = nu.length();
    int strip = nu.part(r - 1);
    std::vector<int> nu_rest(nu.parts().begin(), nu.parts().end() - 1);
    long total = 0;
    // Enumerate kappa <= mu with mu/kappa a horizontal strip of size `strip`.
    std::vector<int> kappa(mu.length());
    auto rec = [&](auto&& self, int row, int used) -> void {
        if (row == mu.length()) {
            if (used != strip) return;
            std::vector<int> k = kappa;
            while (!k.empty() && k.back() == 0) k.pop_back();
            bool decreasing = true;
            for (size_t i = 0; i + 1 < k.size(); ++i)
                if (k[i] < k[i + 1]) decreasing = false;
            if (!decreasing) return;
            total += kostka_number(Partition(k), Partition(nu_rest));
            return;
        }
        int lo = (row + 1 < mu.length()) ? mu.part(row + 1) : 0; // horizontal strip
        for (int v = mu.part(row); v >= lo; --v) {
            if (used + (mu.part(row) - v) > strip) continue;
            kappa[row] = v;
            self(self, row + 1, used + (mu.part(row) - v));
        }
    };
    rec(rec, 0, 0);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(std::make_pair(mu.parts(), nu.parts()), total);
    }
    return total;
}

} // namespace detail

/// Classical Schur polynomial S_{mu|N} in the monomial basis via Kostka
/// numbers; zero when l(mu) > N.
inline MultiSymPoly schur_poly(const Partition& mu, int N) {
    MultiSymPoly r(N);
    if (mu.length() > N) return r;
    for (const Partition& nu : enumerate_partitions(N, static_cast<int>(mu.size()), mu.size())) {
        if (nu.size() != mu.size()) continue;
        long k = detail::kostka_number(mu, nu);
        if (k != 0) r.add_term(nu, ExactScalar(k));
    }
    return r;
}

/// Expands a symmetric polynomial over classical Schur polynomials.
/// Unitriangularity of the Kostka matrix makes this a plain peel-off.
inline std::map<Partition, ExactScalar> monomial_to_schur(MultiSymPoly p) {
    std::map<Partition, ExactScalar> out;
    while (!p.is_zero()) {
        // largest remaining key in graded-lex order dominates everything it
        // can receive contributions from, so its coefficient is final
        Partition key = p.terms().rbegin()->first;
        ExactScalar c = p.terms().rbegin()->second;
        out[key] = c;
        p -= c * schur_poly(key, p.nvars());
    }
    return out;
}

/// det[rows_i(x_j)] / prod_{i<j}(x_i - x_j), rows ordered by strictly
/// decreasing degree. The determinant is expanded exactly and the division
/// is iterated synthetic division with a zero-remainder assertion.
inline MultiSymPoly alternant_quotient(const std::vector<UniPoly>& rows, int nvars) {
    int N = nvars;
    if (static_cast<int>(rows.size()) != N || N < 1)
        throw std::invalid_argument("alternant_quotient: need exactly N rows");
    for (int i = 0; i + 1 < N; ++i)
        if (rows[i].degree() <= rows[i + 1].degree())
            throw std::invalid_argument("alternant_quotient: row degrees must strictly decrease");

    detail::SparsePoly<ExactScalar> det(N);
    std::vector<int> perm(N);
    for (int i = 0; i < N; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end());
    do {
        int sign = detail::permutation_sign(perm);
        // Expand prod_i rows[i](x_{perm[i]}) as an outer product.
        detail::Expo e(N, 0);
        auto rec = [&](auto&& self, int i, const ExactScalar& coeff) -> void {
            if (i == N) {
                det.add_term(e, (sign > 0) ? coeff : -coeff);
                return;
            }
            for (int k = 0; k <= rows[i].degree(); ++k) {
                ExactScalar ck = rows[i].coeff(k);
                if (ck.is_zero()) continue;
                e[perm[i]] = k;
                self(self, i + 1, coeff * ck);
            }
            e[perm[i]] = 0;
        };
        rec(rec, 0, ExactScalar(1));
    } while (std::next_permutation(perm.begin(), perm.end()));

    return MultiSymPoly::from_sparse(det.divide_vandermonde());
}

/// Multiparameter Schur polynomial s_{mu|N}(x | c0, c1, ...) via the
/// alternant of Newton factorial powers of degrees mu_i + N - i.
inline MultiSymPoly mp_schur_alternant(const Partition& mu, int N,
                                       std::span<const ExactScalar> nodes) {
    if (mu.length() > N) return MultiSymPoly(N);
    std::vector<UniPoly> rows;
    rows.reserve(N);
    for (int i = 1; i <= N; ++i) rows.push_back(newton_power(nodes, mu.part(i - 1) + N - i));
    return alternant_quotient(rows, N);
}

/// Same polynomial via the factorial-Schur tableau formula
///   s_{mu|N}(x|c) = sum_{T in SSYT(mu, <=N)} prod_{(i,j)} (x_{T(i,j)} - c_{T(i,j)+j-i-1}),
/// which stays cheap when N is large and |mu| small.
inline MultiSymPoly mp_schur_tableau(const Partition& mu, int N,
                                     std::span<const ExactScalar> nodes) {
    if (mu.length() > N) return MultiSymPoly(N);
    if (mu.empty()) return MultiSymPoly::one(N);

    long needed = mu.part(0) + static_cast<long>(N) - 1;
    if (static_cast<long>(nodes.size()) < needed)
        throw std::invalid_argument("mp_schur: not enough nodes");

    detail::SparsePoly<ExactScalar> acc(N);
    int rows = mu.length();
    std::vector<std::vector<int>> T(rows);
    for (int i = 0; i < rows; ++i) T[i].resize(mu.part(i));

    detail::Expo e(N, 0);
    // expand prod over cells of (x_t - c_{t+j-i-1}) for the current tableau
    auto expand = [&](auto&& self, int i, int j, const ExactScalar& coeff) -> void {
        if (i == rows) {
            acc.add_term(e, coeff);
            return;
        }
        int ni = (j + 1 < mu.part(i)) ? i : i + 1;
        int nj = (j + 1 < mu.part(i)) ? j + 1 : 0;
        int t = T[i][j];
        long node_idx = t + j - i - 1;
        e[t - 1] += 1;
        self(self, ni, nj, coeff);
        e[t - 1] -= 1;
        self(self, ni, nj, coeff * (-nodes[node_idx]));
    };
    auto fill = [&](auto&& self, int i, int j) -> void {
        if (i == rows) {
            expand(expand, 0, 0, ExactScalar(1));
            return;
        }
        int ni = (j + 1 < mu.part(i)) ? i : i + 1;
        int nj = (j + 1 < mu.part(i)) ? j + 1 : 0;
        int lo = 1;
        if (j > 0) lo = std::max(lo, T[i][j - 1]);           // weakly increasing rows
        if (i > 0 && j < mu.part(i - 1)) lo = std::max(lo, T[i - 1][j] + 1); // strict columns
        for (int t = lo; t <= N; ++t) {
            T[i][j] = t;
            self(self, ni, nj);
        }
    };
    fill(fill, 0, 0);

    // The full sum is symmetric; read off sorted-exponent representatives.
    MultiSymPoly r(N);
    for (auto& [expo, c] : acc.terms()) {
        bool sorted_desc = true;
        for (size_t i = 0; i + 1 < expo.size(); ++i)
            if (expo[i] < expo[i + 1]) {
                sorted_desc = false;
                break;
            }
        if (!sorted_desc) continue;
        std::vector<int> key = expo;
        while (!key.empty() && key.back() == 0) key.pop_back();
        r.add_term(Partition(key), c);
    }
    return r;
}

/// Dispatches between the alternant (small N) and tableau (large N) routes.
inline MultiSymPoly mp_schur(const Partition& mu, int N, std::span<const ExactScalar> nodes) {
    if (N <= 7) return mp_schur_alternant(mu, N, nodes);
    return mp_schur_tableau(mu, N, nodes);
}

inline MultiSymPoly mp_schur(const Partition& mu, int N, const std::vector<ExactScalar>& nodes) {
    return mp_schur(mu, N, std::span<const ExactScalar>(nodes));
}

} // namespace qaskey
