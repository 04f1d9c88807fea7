#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaskey/exact.hpp"
#include "qaskey/invseries.hpp"
#include "qaskey/multisym.hpp"
#include "qaskey/partition.hpp"
#include "qaskey/qpoch.hpp"

namespace qaskey {

/// Degree-truncated symmetric function in the Schur basis {S_mu : |mu| <= D}.
/// Everything the library builds here (I_mu, Phi_lambda) is unitriangular
/// over Schur functions, which keeps every expansion pivot-free.
class SymFuncTrunc {
public:
    explicit SymFuncTrunc(long maxdeg = 0) : maxdeg_(maxdeg) {
        if (maxdeg < 0) throw std::invalid_argument("SymFuncTrunc: negative truncation");
    }
    static SymFuncTrunc constant(const ExactScalar& c, long maxdeg) {
        SymFuncTrunc r(maxdeg);
        r.add_term({}, c);
        return r;
    }
    static SymFuncTrunc schur(const Partition& mu, long maxdeg) {
        SymFuncTrunc r(maxdeg);
        r.add_term(mu, ExactScalar(1));
        return r;
    }

    long max_degree() const { return maxdeg_; }
    long degree() const {
        long d = is_zero() ? -1 : 0;
        for (auto& [k, c] : c_) d = std::max(d, k.size());
        return d;
    }
    bool is_zero() const { return c_.empty(); }
    const std::map<Partition, ExactScalar>& terms() const { return c_; }

    void add_term(const Partition& mu, const ExactScalar& c) {
        if (mu.size() > maxdeg_) return; // beyond the tracked degree
        if (c.is_zero()) return;
        auto it = c_.find(mu);
        if (it == c_.end()) {
            c_.emplace(mu, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    ExactScalar coeff(const Partition& mu) const {
        auto it = c_.find(mu);
        return it == c_.end() ? ExactScalar(0) : it->second;
    }

    SymFuncTrunc operator-() const {
        SymFuncTrunc r(maxdeg_);
        for (auto& [k, c] : c_) r.c_.emplace(k, -c);
        return r;
    }
    SymFuncTrunc& operator+=(const SymFuncTrunc& o) {
        maxdeg_ = std::min(maxdeg_, o.maxdeg_);
        prune();
        for (auto& [k, c] : o.c_) add_term(k, c);
        return *this;
    }
    SymFuncTrunc& operator-=(const SymFuncTrunc& o) {
        maxdeg_ = std::min(maxdeg_, o.maxdeg_);
        prune();
        for (auto& [k, c] : o.c_) add_term(k, -c);
        return *this;
    }
    SymFuncTrunc& operator*=(const ExactScalar& s) {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& [k, c] : c_) c *= s;
        return *this;
    }
    friend SymFuncTrunc operator+(SymFuncTrunc a, const SymFuncTrunc& b) { return a += b; }
    friend SymFuncTrunc operator-(SymFuncTrunc a, const SymFuncTrunc& b) { return a -= b; }
    friend SymFuncTrunc operator*(const ExactScalar& s, SymFuncTrunc f) { return f *= s; }

    friend bool operator==(const SymFuncTrunc& a, const SymFuncTrunc& b) { return a.c_ == b.c_; }
    friend bool operator!=(const SymFuncTrunc& a, const SymFuncTrunc& b) { return !(a == b); }

    /// Restriction Sym -> Sym(N): S_mu -> S_{mu|N} (zero when l(mu) > N).
    MultiSymPoly restrict_to(int N) const {
        MultiSymPoly r(N);
        for (auto& [mu, c] : c_) {
            if (mu.length() > N) continue;
            r += c * schur_poly(mu, N);
        }
        return r;
    }

    /// Inverse of restrict_to on degrees <= maxdeg, defined for N >= deg P.
    static SymFuncTrunc lift(const MultiSymPoly& p, long maxdeg) {
        if (p.nvars() < p.degree())
            throw std::invalid_argument("SymFuncTrunc::lift: fewer variables than the degree");
        SymFuncTrunc r(maxdeg);
        for (auto& [mu, c] : monomial_to_schur(p)) r.add_term(mu, c);
        return r;
    }

    /// Ring product: restrict to max(1, deg F + deg G) variables, multiply,
    /// lift back; the result carries truncation min of the inputs'.
    friend SymFuncTrunc operator*(const SymFuncTrunc& F, const SymFuncTrunc& G) {
        long D = std::min(F.maxdeg_, G.maxdeg_);
        if (F.is_zero() || G.is_zero()) return SymFuncTrunc(D);
        int N = static_cast<int>(std::max<long>(1, F.degree() + G.degree()));
        MultiSymPoly prod = F.restrict_to(N) * G.restrict_to(N);
        return lift(prod.truncated(D), D);
    }
    SymFuncTrunc& operator*=(const SymFuncTrunc& o) { return *this = *this * o; }

    /// F(Xc): the degree-k homogeneous component picks up c^k.
    SymFuncTrunc scale_argument(const ExactScalar& c) const {
        SymFuncTrunc r(maxdeg_);
        for (auto& [k, v] : c_) r.add_term(k, v * c.pow(k.size()));
        return r;
    }

    SymFuncTrunc truncated(long maxdeg) const {
        SymFuncTrunc r(std::min(maxdeg, maxdeg_));
        for (auto& [k, c] : c_)
            if (k.size() <= r.maxdeg_) r.c_.emplace(k, c);
        return r;
    }

    /// With a declared truncation degree (used to re-home exact elements of
    /// known degree into wider contexts).
    SymFuncTrunc with_max_degree(long maxdeg) const {
        if (maxdeg < degree())
            throw std::invalid_argument("SymFuncTrunc: widening below actual degree");
        SymFuncTrunc r(maxdeg);
        for (auto& [k, c] : c_) r.c_.emplace(k, c);
        return r;
    }

    bool has_real_coeffs() const {
        for (auto& [k, c] : c_)
            if (!c.is_real()) return false;
        return true;
    }

private:
    void prune() {
        for (auto it = c_.begin(); it != c_.end();)
            it = (it->first.size() > maxdeg_) ? c_.erase(it) : std::next(it);
    }

    long maxdeg_;
    std::map<Partition, ExactScalar> c_;
};

/// The two interpolation node schemes of the construction. Type A uses the
/// geometric nodes q^{N-i-1}; type BC the symmetrized nodes
/// s q^i + s^{-1} q^{N-i-1}. Both satisfy the stabilization conditions with
///   A:  wc_j = q^{-j-1},        r_k = 1/(1-q^k),
///   BC: wc_j = s^{-1} q^{-j-1}, r_k = (s^k + s^{-k})/(1-q^k).
struct NodeScheme {
    enum class Kind { A, BC };

    Kind kind;
    ExactScalar q;
    ExactScalar s; // BC only

    static NodeScheme type_a(ExactScalar q) {
        check_q(q);
        return NodeScheme{Kind::A, std::move(q), ExactScalar(1)};
    }
    static NodeScheme type_bc(ExactScalar q, ExactScalar s) {
        check_q(q);
        if (s.is_zero()) throw std::invalid_argument("NodeScheme: s must be nonzero");
        return NodeScheme{Kind::BC, std::move(q), std::move(s)};
    }

    /// c_i^{(N)}.
    ExactScalar node(int N, long i) const {
        if (kind == Kind::A) return q.pow(N - i - 1);
        return s * q.pow(i) + s.inverse() * q.pow(N - i - 1);
    }
    std::vector<ExactScalar> nodes(int N, long count) const {
        std::vector<ExactScalar> v;
        v.reserve(count);
        for (long i = 0; i < count; ++i) v.push_back(node(N, i));
        return v;
    }

    /// wc_j = lim_N c^{(N)}_{N+j}.
    ExactScalar tail_limit(long j) const {
        ExactScalar v = q.pow(-j - 1);
        return kind == Kind::A ? v : s.inverse() * v;
    }
    /// r_k = lim_N sum_i (c_i^{(N)})^k.
    ExactScalar power_sum_limit(long k) const {
        ExactScalar den = ExactScalar(1) - q.pow(k);
        if (kind == Kind::A) return den.inverse();
        return (s.pow(k) + s.pow(-k)) / den;
    }
    /// Node sequence of the limiting dual Schur functions: wc_{-K+1+i}.
    ExactScalar dual_node(int K, long i) const { return tail_limit(-K + 1 + i); }
    std::vector<ExactScalar> dual_nodes(int K, long count) const {
        std::vector<ExactScalar> v;
        v.reserve(count);
        for (long i = 0; i < count; ++i) v.push_back(dual_node(K, i));
        return v;
    }

    std::string cache_key() const {
        return (kind == Kind::A ? std::string("A|") : std::string("BC|")) + q.str() + "|" +
               s.str();
    }

private:
    static void check_q(const ExactScalar& q) {
        if (!q.is_real() || !(q > ExactScalar(0)) || !(q < ExactScalar(1)))
            throw std::invalid_argument("NodeScheme: q must be rational in (0,1)");
    }
};

/// Coefficient of m_kappa(v) in prod_{j=1}^K (sum_t f[t] v_j^t) is simply
/// prod_j f[kappa_j] because each variable sits in exactly one factor.
template <class C>
InvSeries<C> symmetric_product_series(int K, long D, const std::vector<C>& f, const C& zero) {
    InvSeries<C> out(K, D, zero);
    for (const Partition& kappa : enumerate_partitions(K, static_cast<int>(D), D)) {
        if (kappa.part(0) >= static_cast<int>(f.size())) continue;
        C prod = f[0];
        bool first = true;
        for (int j = 0; j < K; ++j) {
            int e = kappa.part(j);
            if (first) {
                prod = f[e];
                first = false;
            } else {
                prod *= f[e];
            }
        }
        out.add_term(kappa, prod);
    }
    return out;
}

namespace detail {

/// Per-variable series of the type-A Cauchy identity:
/// H(v; .) (v;q)_inf = sum_t [ sum_{k+n=t} e_n(q) S_(k) ] v^t.
inline std::vector<SymFuncTrunc> cauchy_factor_a(const ExactScalar& q, long D) {
    std::vector<SymFuncTrunc> f;
    for (long t = 0; t <= D; ++t) {
        SymFuncTrunc ft(D);
        for (long k = 0; k <= t; ++k) {
            long n = t - k;
            Partition row = (k == 0) ? Partition{} : Partition{static_cast<int>(k)};
            ft.add_term(row, euler_infinite_coeff(q, n));
        }
        f.push_back(ft);
    }
    return f;
}

/// Type BC: H(v; .) (s v;q)_inf (s^{-1} v;q)_inf.
inline std::vector<SymFuncTrunc> cauchy_factor_bc(const ExactScalar& q, const ExactScalar& s,
                                                  long D) {
    std::vector<SymFuncTrunc> f;
    for (long t = 0; t <= D; ++t) {
        SymFuncTrunc ft(D);
        for (long k = 0; k <= t; ++k) {
            Partition row = (k == 0) ? Partition{} : Partition{static_cast<int>(k)};
            ExactScalar scalar(0);
            for (long a = 0; a + k <= t; ++a) {
                long b = t - k - a;
                scalar += euler_infinite_coeff(q, a) * s.pow(a) * euler_infinite_coeff(q, b) *
                          s.pow(-b);
            }
            ft.add_term(row, scalar);
        }
        f.push_back(ft);
    }
    return f;
}

} // namespace detail

/// Exact interpolation symmetric functions I_mu (restricted to degree <= D)
/// for a whole scheme, by inverting the Cauchy identity in K = max(D,1) dual
/// variables. Results are cached per (scheme, D); reads are mutex-guarded and
/// writes idempotent, so concurrent workers can share the table.
inline const std::map<Partition, SymFuncTrunc>& interp_family_cauchy(const NodeScheme& scheme,
                                                                     long D, int K_override = 0) {
    static std::map<std::string, std::map<Partition, SymFuncTrunc>> cache;
    static std::mutex mutex;
    int K = (K_override > 0) ? K_override : static_cast<int>(std::max<long>(D, 1));
    if (K < D) throw std::invalid_argument("interp_family_cauchy: need K >= D");
    std::string key = scheme.cache_key() + "|D" + std::to_string(D) + "|K" + std::to_string(K);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    long need = D + K - 1;
    std::vector<ExactScalar> dual = scheme.dual_nodes(K, need + 1);

    std::map<Partition, InvSeries<ExactScalar>> basis;
    for (const Partition& mu : enumerate_partitions(K, static_cast<int>(D), D))
        basis.emplace(mu, dual_schur(mu, K, dual, D));

    std::vector<SymFuncTrunc> f = (scheme.kind == NodeScheme::Kind::A)
                                      ? detail::cauchy_factor_a(scheme.q, D)
                                      : detail::cauchy_factor_bc(scheme.q, scheme.s, D);
    InvSeries<SymFuncTrunc> rhs = symmetric_product_series(K, D, f, SymFuncTrunc(D));

    auto sol = invseries_solve_triangular(rhs, basis);

    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = cache.emplace(key, std::move(sol));
    return it->second;
}

enum class InterpMethod { Cauchy, Projection };

/// I^A_mu or I^BC_mu truncated to degree <= D. The Cauchy route is exact;
/// the projection route returns iota_{D,N}(I_{mu|N}), an approximant whose
/// error decays geometrically in N (used for cross-validation).
inline SymFuncTrunc interp_limit(const NodeScheme& scheme, const Partition& mu, long D,
                                 InterpMethod method = InterpMethod::Cauchy, int N = 0) {
    if (mu.size() > D)
        throw std::invalid_argument("interp_limit: |mu| exceeds the truncation degree");
    if (method == InterpMethod::Cauchy) {
        const auto& family = interp_family_cauchy(scheme, D);
        auto it = family.find(mu);
        if (it == family.end()) throw std::logic_error("interp_limit: mu missing from family");
        return it->second;
    }
    if (N < D) throw std::invalid_argument("interp_limit: projection needs N >= D");
    long need = mu.part(0) + static_cast<long>(N);
    MultiSymPoly p = mp_schur(mu, N, scheme.nodes(N, need));
    return SymFuncTrunc::lift(p, D);
}

} // namespace qaskey
