#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaskey/approx.hpp"
#include "qaskey/exact.hpp"
#include "qaskey/qpoch.hpp"
#include "qaskey/unipoly.hpp"

namespace qaskey {

enum class Family { QRacah, BigQJacobi, QMeixner, ASC };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::QRacah: return "q-racah";
        case Family::BigQJacobi: return "big-q-jacobi";
        case Family::QMeixner: return "q-meixner";
        case Family::ASC: return "al-salam-carlitz";
    }
    return "?";
}

namespace detail {

inline void check_q_range(const ExactScalar& q) {
    if (!q.is_real() || !(q > ExactScalar(0)) || !(q < ExactScalar(1)))
        throw std::invalid_argument("q must be rational with 0 < q < 1");
}

/// Finds m with base*q^{m+1} < v < base*q^m (strictly), for positive v, base.
inline std::optional<long> bracket_window(const ExactScalar& v, const ExactScalar& base,
                                          const ExactScalar& q) {
    if (!v.is_real() || !(v > ExactScalar(0))) return std::nullopt;
    for (long m = -128; m <= 128; ++m)
        if (base * q.pow(m + 1) < v && v < base * q.pow(m)) return m;
    return std::nullopt;
}

/// Both u and v inside the same window (base*q^{m+1}, base*q^m).
inline std::optional<long> common_window(const ExactScalar& u, const ExactScalar& v,
                                         const ExactScalar& base, const ExactScalar& q) {
    auto mu = bracket_window(u, base, q);
    if (!mu) return std::nullopt;
    auto mv = bracket_window(v, base, q);
    if (!mv || *mu != *mv) return std::nullopt;
    return mu;
}

/// chi not of the form q^e for |e| <= 64 (only positive reals can collide).
inline void check_not_q_power(const ExactScalar& chi, const ExactScalar& q, const char* what) {
    if (!chi.is_real() || !(chi > ExactScalar(0))) return;
    for (long e = -64; e <= 64; ++e)
        if (chi == q.pow(e))
            throw std::invalid_argument(std::string(what) + " lies in q^Z (e = " +
                                        std::to_string(e) + ")");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Parameter records with admissibility detection
// ---------------------------------------------------------------------------

/// q-Racah parameter quadruple. Admissible quadruples have
/// s2 = -zeta q^R, s3 = zeta^{-1} q^{-L} and (s0, s1) in one of three
/// branches: complex-conjugate, a positive window, or a negative window.
struct QRacahParams {
    ExactScalar q, s0, s1, s2, s3;
    bool admissible = false;
    int branch = 0; // 1: conjugate pair, 2: positive window, 3: negative window
    ExactScalar zeta = ExactScalar(1);
    long L = 0, R = 0;

    ExactScalar chi() const { return s0 * s1 * s2 * s3; }
    long K() const { return L - R; }

    static QRacahParams generic(ExactScalar q, ExactScalar s0, ExactScalar s1, ExactScalar s2,
                                ExactScalar s3) {
        detail::check_q_range(q);
        if (s0.is_zero()) throw std::invalid_argument("QRacahParams: s0 must be nonzero");
        QRacahParams p{std::move(q), std::move(s0), std::move(s1), std::move(s2), std::move(s3)};
        detail::check_not_q_power(p.chi(), p.q, "s0*s1*s2*s3");
        return p;
    }

    /// Builds s2 = -zeta q^R, s3 = zeta^{-1} q^{-L} and verifies one of the
    /// three positivity branches for (s0, s1).
    static QRacahParams grid_admissible(ExactScalar q, ExactScalar zeta, long L, long R,
                                        ExactScalar s0, ExactScalar s1) {
        detail::check_q_range(q);
        if (!zeta.is_real() || !(zeta > ExactScalar(0)))
            throw std::invalid_argument("QRacahParams: zeta must be positive");
        if (L < R) throw std::invalid_argument("QRacahParams: need L >= R");
        ExactScalar s2 = -(zeta * q.pow(R));
        ExactScalar s3 = zeta.inverse() * q.pow(-L);
        QRacahParams p = generic(q, s0, s1, s2, s3);
        p.zeta = zeta;
        p.L = L;
        p.R = R;
        if (!s0.is_real() && s1 == s0.conj()) {
            p.branch = 1;
        } else if (s0.is_real() && s1.is_real()) {
            if (s0 > ExactScalar(0) &&
                detail::common_window(s0, s1, zeta.inverse(), q).has_value())
                p.branch = 2;
            else if (s0 < ExactScalar(0) &&
                     detail::common_window(-s0, -s1, zeta, q).has_value())
                p.branch = 3;
        }
        if (p.branch == 0)
            throw std::invalid_argument("QRacahParams: (s0,s1) fails every positivity branch");
        p.admissible = true;
        return p;
    }

    /// All four s_i scaled by q^m (the N-variate substitution with
    /// m = (1-N)/2). Admissibility survives with L -> L-m, R -> R+m.
    QRacahParams scaled_s(long m) const {
        ExactScalar f = q.pow(m);
        if (admissible) return grid_admissible(q, zeta, L - m, R + m, s0 * f, s1 * f);
        return generic(q, s0 * f, s1 * f, s2 * f, s3 * f);
    }
};

/// Big q-Jacobi quadruple: a > 0 > b, and (c, d) conjugate or inside a
/// q-window anchored at a or at b.
struct BqJParams {
    ExactScalar q, a, b, c, d;
    bool admissible = false;
    int branch = 0;

    static BqJParams generic(ExactScalar q, ExactScalar a, ExactScalar b, ExactScalar c,
                             ExactScalar d) {
        detail::check_q_range(q);
        for (const auto* v : {&a, &b, &c, &d})
            if (v->is_zero()) throw std::invalid_argument("BqJParams: parameters must be nonzero");
        return BqJParams{std::move(q), std::move(a), std::move(b), std::move(c), std::move(d)};
    }
    static BqJParams make_admissible(ExactScalar q, ExactScalar a, ExactScalar b, ExactScalar c,
                                     ExactScalar d) {
        BqJParams p = generic(std::move(q), std::move(a), std::move(b), std::move(c), std::move(d));
        if (!(p.a.is_real() && p.b.is_real() && p.a > ExactScalar(0) && p.b < ExactScalar(0)))
            throw std::invalid_argument("BqJParams: need a > 0 > b");
        if (!p.c.is_real() && p.d == p.c.conj()) {
            p.branch = 1;
        } else if (p.c.is_real() && p.d.is_real()) {
            if (p.c > ExactScalar(0) && detail::common_window(p.c, p.d, p.a * p.q.inverse(), p.q))
                p.branch = 2; // a q^m < c,d < a q^{m-1}
            else if (p.c < ExactScalar(0) &&
                     detail::common_window(-p.c, -p.d, -p.b * p.q.inverse(), p.q))
                p.branch = 3; // b q^{m-1} < c,d < b q^m
        }
        if (p.branch == 0)
            throw std::invalid_argument("BqJParams: (c,d) fails every admissibility branch");
        p.admissible = true;
        return p;
    }
    /// c,d scaled by q^m (the N-variate substitution uses m = 1-N); the
    /// branch conditions are invariant under that homothety.
    BqJParams scaled_cd(long m) const {
        ExactScalar f = q.pow(m);
        if (admissible) return make_admissible(q, a, b, c * f, d * f);
        return generic(q, a, b, c * f, d * f);
    }
};

/// q-Meixner triple (a, c, d) with grid anchor beta < 0.
struct QMeixnerParams {
    ExactScalar q, a, c, d;
    ExactScalar beta = ExactScalar(-1);
    bool admissible = false;
    int branch = 0;

    static QMeixnerParams generic(ExactScalar q, ExactScalar a, ExactScalar c, ExactScalar d,
                                  ExactScalar beta = ExactScalar(-1)) {
        detail::check_q_range(q);
        for (const auto* v : {&a, &c, &d})
            if (v->is_zero())
                throw std::invalid_argument("QMeixnerParams: parameters must be nonzero");
        if (!beta.is_real() || !(beta < ExactScalar(0)))
            throw std::invalid_argument("QMeixnerParams: beta must be negative");
        QMeixnerParams p;
        p.q = std::move(q);
        p.a = std::move(a);
        p.c = std::move(c);
        p.d = std::move(d);
        p.beta = std::move(beta);
        return p;
    }
    static QMeixnerParams make_admissible(ExactScalar q, ExactScalar a, ExactScalar c,
                                          ExactScalar d, ExactScalar beta = ExactScalar(-1)) {
        QMeixnerParams p = generic(std::move(q), std::move(a), std::move(c), std::move(d),
                                   std::move(beta));
        if (!(p.a.is_real() && p.a > ExactScalar(0)))
            throw std::invalid_argument("QMeixnerParams: need a > 0");
        if (!p.c.is_real() && p.d == p.c.conj()) {
            p.branch = 1;
        } else if (p.c.is_real() && p.d.is_real()) {
            if (p.c > ExactScalar(0) && detail::common_window(p.c, p.d, p.a * p.q.inverse(), p.q)) {
                p.branch = 2;
            } else if (p.c < ExactScalar(0) && p.d < ExactScalar(0)) {
                ExactScalar ratio = p.c / p.d;
                if (p.q < ratio && ratio < p.q.inverse()) {
                    // the anchor must bracket c,d on the negative side
                    if (detail::common_window(-p.c, -p.d, -p.beta * p.q.inverse(), p.q))
                        p.branch = 3;
                }
            }
        }
        if (p.branch == 0)
            throw std::invalid_argument("QMeixnerParams: (a,c,d) fails every branch");
        p.admissible = true;
        return p;
    }
    QMeixnerParams scaled_cd(long m) const {
        ExactScalar f = q.pow(m);
        ExactScalar nb = beta;
        if (branch == 3) nb = beta * f; // keep the anchor tied to the window
        if (admissible) return make_admissible(q, a, c * f, d * f, nb);
        return generic(q, a, c * f, d * f, nb);
    }
};

/// Al-Salam-Carlitz pair (c, d) with grid anchors alpha > 0, beta < 0.
struct ASCParams {
    ExactScalar q, c, d;
    ExactScalar alpha = ExactScalar(1), beta = ExactScalar(-1);
    bool admissible = false;
    int branch = 0;

    static ASCParams generic(ExactScalar q, ExactScalar c, ExactScalar d,
                             ExactScalar alpha = ExactScalar(1),
                             ExactScalar beta = ExactScalar(-1)) {
        detail::check_q_range(q);
        for (const auto* v : {&c, &d})
            if (v->is_zero()) throw std::invalid_argument("ASCParams: parameters must be nonzero");
        if (!(alpha.is_real() && alpha > ExactScalar(0) && beta.is_real() && beta < ExactScalar(0)))
            throw std::invalid_argument("ASCParams: need alpha > 0 > beta");
        ASCParams p;
        p.q = std::move(q);
        p.c = std::move(c);
        p.d = std::move(d);
        p.alpha = std::move(alpha);
        p.beta = std::move(beta);
        return p;
    }
    static ASCParams make_admissible(ExactScalar q, ExactScalar c, ExactScalar d,
                                     ExactScalar alpha = ExactScalar(1),
                                     ExactScalar beta = ExactScalar(-1)) {
        ASCParams p = generic(std::move(q), std::move(c), std::move(d), std::move(alpha),
                              std::move(beta));
        if (!p.c.is_real() && p.d == p.c.conj()) {
            p.branch = 1;
        } else if (p.c.is_real() && p.d.is_real() && p.c.sign() == p.d.sign()) {
            ExactScalar ratio = p.c / p.d;
            if (p.q < ratio && ratio < p.q.inverse()) {
                if (p.c > ExactScalar(0)) {
                    if (detail::common_window(p.c, p.d, p.alpha * p.q.inverse(), p.q)) p.branch = 2;
                } else {
                    if (detail::common_window(-p.c, -p.d, -p.beta * p.q.inverse(), p.q))
                        p.branch = 3;
                }
            }
        }
        if (p.branch == 0) throw std::invalid_argument("ASCParams: (c,d) fails every branch");
        p.admissible = true;
        return p;
    }
    ASCParams scaled_cd(long m) const {
        ExactScalar f = q.pow(m);
        ExactScalar na = alpha, nb = beta;
        if (branch == 2) na = alpha * f;
        if (branch == 3) nb = beta * f;
        if (admissible) return make_admissible(q, c * f, d * f, na, nb);
        return generic(q, c * f, d * f, na, nb);
    }
};

// ---------------------------------------------------------------------------
// Monic polynomial families
// ---------------------------------------------------------------------------

namespace detail {

/// (c x; q)_k as a polynomial in x.
inline UniPoly cx_pochhammer(const ExactScalar& c, const ExactScalar& q, long k) {
    UniPoly r = UniPoly::one();
    for (long j = 0; j < k; ++j)
        r = r * (UniPoly::one() - (c * q.pow(j)) * UniPoly::x());
    return r;
}

inline ExactScalar guarded_inverse(const ExactScalar& v, const char* what) {
    if (v.is_zero())
        throw std::domain_error(std::string("singular parameter configuration: ") + what);
    return v.inverse();
}

} // namespace detail

/// Monic q-Racah polynomial phi_n from its Newton-basis expansion over the
/// nodes s0^{-1} q^{-k} - s0 q^k (the expansion of the terminating 4phi3 in
/// the variable x = v - v^{-1}):
///   phi_n = sum_m c(n,m) (x | nodes)^m,
///   c(l,m) = (q;q)_l/(q;q)_m * prod_{i=1..3}(-s0 s_i q^m;q)_{l-m}
///            / [ q^{m(l-m)} s0^{l-m} (q;q)_{l-m} (chi q^{l+m-1};q)_{l-m} ].
inline UniPoly phi_qracah(long n, const QRacahParams& p) {
    if (n < 0) throw std::invalid_argument("phi_qracah: negative degree");
    std::vector<ExactScalar> nodes;
    for (long k = 0; k < std::max<long>(n, 1); ++k)
        nodes.push_back(p.s0.inverse() * p.q.pow(-k) - p.s0 * p.q.pow(k));
    ExactScalar chi = p.chi();
    UniPoly acc;
    for (long m = 0; m <= n; ++m) {
        ExactScalar num = qpoch_finite(p.q, p.q, n);
        for (const ExactScalar& si : {p.s1, p.s2, p.s3})
            num *= qpoch_finite(-(p.s0 * si * p.q.pow(m)), p.q, n - m);
        ExactScalar den = qpoch_finite(p.q, p.q, m) * p.q.pow(m * (n - m)) * p.s0.pow(n - m) *
                          qpoch_finite(p.q, p.q, n - m) *
                          qpoch_finite(chi * p.q.pow(n + m - 1), p.q, n - m);
        ExactScalar coeff = num * detail::guarded_inverse(den, "vanishing Pochhammer in c(l,m)");
        acc += coeff * newton_power(nodes, m);
    }
    return acc;
}

/// Monic big q-Jacobi polynomial via its terminating 3phi2 representation.
inline UniPoly phi_bqj(long n, const BqJParams& p) {
    if (n < 0) throw std::invalid_argument("phi_bqj: negative degree");
    const ExactScalar &q = p.q, &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    ExactScalar cq_a = c * q / a, cq_b = c * q / b;
    ExactScalar lam = c * d * q / (a * b); // (cd/ab) q
    ExactScalar pref = qpoch_finite(cq_a, q, n) * qpoch_finite(cq_b, q, n) *
                       detail::guarded_inverse(c.pow(n) * qpoch_finite(lam * q.pow(n), q, n),
                                               "phi_bqj prefactor");
    UniPoly acc;
    for (long k = 0; k <= n; ++k) {
        ExactScalar num = qpoch_finite(q.pow(-n), q, k) * qpoch_finite(lam * q.pow(n), q, k) *
                          q.pow(k);
        ExactScalar den = qpoch_finite(q, q, k) * qpoch_finite(cq_a, q, k) *
                          qpoch_finite(cq_b, q, k);
        ExactScalar coeff = num * detail::guarded_inverse(den, "phi_bqj series");
        acc += coeff * detail::cx_pochhammer(c, q, k);
    }
    return pref * acc;
}

/// Monic q-Meixner polynomial via its terminating 2phi1 representation.
inline UniPoly phi_qm(long n, const QMeixnerParams& p) {
    if (n < 0) throw std::invalid_argument("phi_qm: negative degree");
    const ExactScalar &q = p.q, &a = p.a, &c = p.c, &d = p.d;
    ExactScalar cq_a = c * q / a;
    ExactScalar pref = qpoch_finite(cq_a, q, n) *
                       (a * detail::guarded_inverse(c * d * q.pow(n), "phi_qm prefactor")).pow(n);
    ExactScalar z = (d / a) * q.pow(n + 1);
    UniPoly acc;
    for (long k = 0; k <= n; ++k) {
        ExactScalar num = qpoch_finite(q.pow(-n), q, k) * z.pow(k);
        ExactScalar den = qpoch_finite(q, q, k) * qpoch_finite(cq_a, q, k);
        ExactScalar coeff = num * detail::guarded_inverse(den, "phi_qm series");
        acc += coeff * detail::cx_pochhammer(c, q, k);
    }
    return pref * acc;
}

/// Monic Al-Salam-Carlitz polynomial, normalized as the a -> 0 limit of the
/// q-Meixner family (the eigenfunctions of the printed ASC operator):
///   phi_n = (-1)^n d^{-n} q^{-C(n,2)} sum_k (q^{-n};q)_k/(q;q)_k
///           (cx;q)_k (-d/c)^k q^{nk - C(k,2)}.
inline UniPoly phi_asc(long n, const ASCParams& p) {
    if (n < 0) throw std::invalid_argument("phi_asc: negative degree");
    const ExactScalar &q = p.q, &c = p.c, &d = p.d;
    ExactScalar pref = (n % 2 == 0 ? ExactScalar(1) : ExactScalar(-1)) * d.pow(-n) *
                       q.pow(-(n * (n - 1) / 2));
    UniPoly acc;
    for (long k = 0; k <= n; ++k) {
        ExactScalar num = qpoch_finite(q.pow(-n), q, k) * (-(d / c)).pow(k) *
                          q.pow(n * k - k * (k - 1) / 2);
        ExactScalar den = qpoch_finite(q, q, k);
        ExactScalar coeff = num * detail::guarded_inverse(den, "phi_asc series");
        acc += coeff * detail::cx_pochhammer(c, q, k);
    }
    return pref * acc;
}

// ---------------------------------------------------------------------------
// q-difference operators via their exact monomial actions
// ---------------------------------------------------------------------------

/// D x^n = A_n x^n + B_n x^{n-1} + C_n x^{n-2}, applied linearly. The three
/// coefficient triples follow from the printed operator definitions; they
/// vanish appropriately at n = 0, 1 so polynomials stay polynomials.
inline UniPoly apply_operator(Family fam, const ExactScalar& q, const ExactScalar& a,
                              const ExactScalar& b, const ExactScalar& c, const ExactScalar& d,
                              const UniPoly& f) {
    UniPoly out;
    for (long n = 0; n <= f.degree(); ++n) {
        ExactScalar fn = f.coeff(n);
        if (fn.is_zero()) continue;
        ExactScalar up = q.pow(n) - ExactScalar(1);    // q^n - 1
        ExactScalar dn = q.pow(-n) - ExactScalar(1);   // q^{-n} - 1
        ExactScalar A(0), B(0), C(0);
        switch (fam) {
            case Family::BigQJacobi: {
                ExactScalar qab = q / (a * b);
                A = (c * d * qab) * up + dn; // = -(q^{-n}-1)(cd q^{n+1}/ab - 1)
                B = -(qab * ((c + d) * up + (a + b) * dn));
                C = qab * up + q * qab * dn;
                break;
            }
            case Family::QMeixner:
                A = c * d * up;
                B = -((c + d) * up) - a * dn;
                C = up + q * dn;
                break;
            case Family::ASC:
                A = c * d * up;
                B = -((c + d) * up);
                C = up + q * dn;
                break;
            case Family::QRacah:
                throw std::invalid_argument("apply_operator: q-Racah acts on grids, not C[x]");
        }
        std::vector<ExactScalar> mono(n + 1, ExactScalar(0));
        mono[n] = fn * A;
        if (n >= 1) mono[n - 1] = fn * B;
        if (n >= 2) mono[n - 2] = fn * C;
        out += UniPoly(std::move(mono));
    }
    return out;
}

inline UniPoly apply_operator(const BqJParams& p, const UniPoly& f) {
    return apply_operator(Family::BigQJacobi, p.q, p.a, p.b, p.c, p.d, f);
}
inline UniPoly apply_operator(const QMeixnerParams& p, const UniPoly& f) {
    return apply_operator(Family::QMeixner, p.q, p.a, ExactScalar(0), p.c, p.d, f);
}
inline UniPoly apply_operator(const ASCParams& p, const UniPoly& f) {
    return apply_operator(Family::ASC, p.q, ExactScalar(0), ExactScalar(0), p.c, p.d, f);
}

inline ExactScalar eigenvalue_bqj(long n, const BqJParams& p) {
    ExactScalar up = p.q.pow(n) - ExactScalar(1), dn = p.q.pow(-n) - ExactScalar(1);
    return (p.c * p.d * p.q / (p.a * p.b)) * up + dn;
}
inline ExactScalar eigenvalue_qm(long n, const QMeixnerParams& p) {
    return p.c * p.d * (p.q.pow(n) - ExactScalar(1));
}
inline ExactScalar eigenvalue_asc(long n, const ASCParams& p) {
    return p.c * p.d * (p.q.pow(n) - ExactScalar(1));
}
/// q^{-n}(1-q^n)(chi q^{n-1} - 1), the D^{qR} eigenvalue.
inline ExactScalar eigenvalue_qracah(long n, const QRacahParams& p) {
    return p.q.pow(-n) * (ExactScalar(1) - p.q.pow(n)) *
           (p.chi() * p.q.pow(n - 1) - ExactScalar(1));
}

// ---------------------------------------------------------------------------
// The q-Racah grid, difference operator and exact weights
// ---------------------------------------------------------------------------

/// y_m = zeta q^m - zeta^{-1} q^{-m}; strictly decreasing in m.
inline ExactScalar qracah_node(const ExactScalar& zeta, const ExactScalar& q, long m) {
    return zeta * q.pow(m) - zeta.inverse() * q.pow(-m);
}
inline std::vector<ExactScalar> qracah_grid(const ExactScalar& zeta, const ExactScalar& q,
                                            long m_lo, long m_hi) {
    std::vector<ExactScalar> v;
    for (long m = m_lo; m <= m_hi; ++m) v.push_back(qracah_node(zeta, q, m));
    return v;
}

inline ExactScalar qracah_beta(const QRacahParams& p, long m) {
    ExactScalar zq = p.zeta * p.q.pow(m);
    ExactScalar num(1);
    for (const ExactScalar& s : {p.s0, p.s1, p.s2, p.s3}) num *= ExactScalar(1) - s * zq;
    ExactScalar z2 = p.zeta * p.zeta * p.q.pow(2 * m);
    ExactScalar den = (ExactScalar(1) + z2) * (ExactScalar(1) + z2 * p.q);
    return -(num / den);
}
inline ExactScalar qracah_delta(const QRacahParams& p, long m) {
    ExactScalar zq = p.zeta.inverse() * p.q.pow(-m);
    ExactScalar num(1);
    for (const ExactScalar& s : {p.s0, p.s1, p.s2, p.s3}) num *= ExactScalar(1) + s * zq;
    ExactScalar z2 = p.zeta.pow(-2) * p.q.pow(-2 * m);
    ExactScalar den = (ExactScalar(1) + z2) * (ExactScalar(1) + z2 * p.q);
    return -(num / den);
}

/// (D^{qR} f)(y_m) = beta_m [f(y_{m+1}) - f(y_m)] + delta_m [f(y_{m-1}) - f(y_m)]
/// for m = R..L; f is given on the extended index range R-1..L+1 (the ghost
/// values are annihilated by beta_L = delta_R = 0).
inline std::vector<ExactScalar> qracah_operator_on_grid(const QRacahParams& p,
                                                        const std::vector<ExactScalar>& f) {
    if (!p.admissible)
        throw std::invalid_argument("qracah_operator_on_grid: needs admissible parameters");
    long count = p.L - p.R + 3;
    if (static_cast<long>(f.size()) != count)
        throw std::invalid_argument("qracah_operator_on_grid: expected values on R-1..L+1");
    std::vector<ExactScalar> out;
    for (long m = p.R; m <= p.L; ++m) {
        size_t i = static_cast<size_t>(m - (p.R - 1));
        ExactScalar v = qracah_beta(p, m) * (f[i + 1] - f[i]) +
                        qracah_delta(p, m) * (f[i - 1] - f[i]);
        out.push_back(v);
    }
    return out;
}

/// Exact orthogonality weights on the grid interval y_L < ... < y_R, from the
/// balance relation w_m beta_m = w_{m+1} delta_{m+1}, normalized to mass one.
struct QRacahWeights {
    long L = 0, R = 0;
    std::vector<ExactScalar> node;   // index i <-> m = R + i
    std::vector<ExactScalar> weight; // positive, sums to one
    long index_of(long m) const { return m - R; }
};

inline QRacahWeights qracah_weights(const QRacahParams& p) {
    if (!p.admissible) throw std::invalid_argument("qracah_weights: needs admissible parameters");
    if (!qracah_beta(p, p.L).is_zero() || !qracah_delta(p, p.R).is_zero())
        throw std::logic_error("qracah_weights: boundary coefficients must vanish");
    QRacahWeights out;
    out.L = p.L;
    out.R = p.R;
    std::vector<ExactScalar> w{ExactScalar(1)};
    for (long m = p.R; m < p.L; ++m) {
        ExactScalar beta = qracah_beta(p, m);
        ExactScalar delta = qracah_delta(p, m + 1);
        if (!beta.is_real() || !(beta > ExactScalar(0)))
            throw std::domain_error("qracah_weights: beta_" + std::to_string(m) +
                                    " is not positive (non-admissible parameters)");
        if (!delta.is_real() || !(delta > ExactScalar(0)))
            throw std::domain_error("qracah_weights: delta_" + std::to_string(m + 1) +
                                    " is not positive (non-admissible parameters)");
        w.push_back(w.back() * beta / delta);
    }
    ExactScalar total(0);
    for (const auto& x : w) total += x;
    for (auto& x : w) x /= total;
    out.weight = std::move(w);
    for (long m = p.R; m <= p.L; ++m) out.node.push_back(qracah_node(p.zeta, p.q, m));
    return out;
}

/// Squared norm h_n of the univariate q-Racah polynomials:
/// (-1)^n (q;q)_n prod_{i<j}(-s_i s_j;q)_n / [(chi q^{n-1};q)_n (chi;q)_{2n}].
inline ExactScalar qracah_norm_h(long n, const QRacahParams& p) {
    ExactScalar num = (n % 2 == 0 ? ExactScalar(1) : ExactScalar(-1)) *
                      qpoch_finite(p.q, p.q, n);
    const ExactScalar* s[4] = {&p.s0, &p.s1, &p.s2, &p.s3};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) num *= qpoch_finite(-(*s[i] * *s[j]), p.q, n);
    ExactScalar chi = p.chi();
    ExactScalar den = qpoch_finite(chi * p.q.pow(n - 1), p.q, n) * qpoch_finite(chi, p.q, 2 * n);
    return num * detail::guarded_inverse(den, "qracah_norm_h denominator");
}

/// The Remark's explicit weight formula, evaluated numerically: the constant
/// part is normalized by Bailey's very-well-poised 6psi6 summation, so the
/// result should match the balance-relation weights with no free constant.
inline ApproxScalar qracah_weight_explicit(const QRacahParams& p, long m, long prec,
                                           const ApproxScalar& tol) {
    for (const ExactScalar* v : {&p.s0, &p.s1, &p.s2, &p.s3})
        if (!v->is_real())
            throw std::invalid_argument("qracah_weight_explicit: real parameters only");
    auto A = [&](const ExactScalar& x) { return ApproxScalar::from_exact(x, prec); };
    ApproxScalar q = A(p.q), one = ApproxScalar::from_long(1, prec);
    auto poch_inf = [&](const ExactScalar& x) { return qpoch_infinite(A(x), q, tol); };

    ExactScalar zeta = p.zeta, chi = p.chi();
    const ExactScalar* s[4] = {&p.s0, &p.s1, &p.s2, &p.s3};

    ApproxScalar c0 = one;
    for (int k = 0; k < 4; ++k) {
        c0 *= poch_inf(-(s[k]->inverse() * zeta * p.q));
        c0 *= poch_inf(s[k]->inverse() * zeta.inverse() * p.q);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            c0 /= poch_inf(-(s[i]->inverse() * s[j]->inverse() * p.q));

    ApproxScalar c1 = poch_inf(p.q / chi) /
                      (poch_inf(p.q) * poch_inf(-(zeta * zeta * p.q)) *
                       poch_inf(-(zeta.pow(-2) * p.q)));

    ApproxScalar t = one;
    try {
        for (int k = 0; k < 4; ++k) {
            t *= apoch_signed(A(*s[k] * zeta), q, m);
            t /= apoch_signed(A(-(p.q * zeta / *s[k])), q, m);
        }
    } catch (const std::domain_error&) {
        return ApproxScalar(prec); // a vanishing factor: the weight is zero off [R,L]
    }
    ExactScalar z2m = zeta * zeta * p.q.pow(2 * m);
    t *= A((ExactScalar(1) + z2m) / (ExactScalar(1) + zeta * zeta));
    t *= A(p.q / chi).pow_long(m);
    return c0 * c1 * t;
}

// ---------------------------------------------------------------------------
// Numeric weights for the unbounded families
// ---------------------------------------------------------------------------

/// Normalized weights on a truncated grid with a certified relative bound on
/// the discarded tail mass.
struct ApproxGridMeasure {
    std::vector<ApproxScalar> nodes;
    std::vector<ApproxScalar> weights;
    ApproxScalar tail_bound; // discarded / kept mass, certified upper bound
    long window = 0;
};

namespace detail {

struct RawGrid {
    std::vector<ApproxScalar> nodes;   // all kept nodes
    std::vector<ApproxScalar> weights; // unnormalized
    std::vector<ApproxScalar> edge_weights;
    std::vector<ApproxScalar> edge_ratio_bounds; // per edge, must be < 1
};

/// Generic assembly: normalize and bound the tail by edge * r/(1-r) per side.
inline ApproxGridMeasure finish_grid(RawGrid&& g, long prec, long window) {
    ApproxScalar total = ApproxScalar::from_long(0, prec);
    for (auto& w : g.weights) {
        if (!(w.sign() > 0)) throw std::domain_error("family_weights: non-positive weight");
        total += w;
    }
    ApproxScalar tail = ApproxScalar::from_long(0, prec);
    ApproxScalar one = ApproxScalar::from_long(1, prec);
    for (size_t i = 0; i < g.edge_weights.size(); ++i) {
        const ApproxScalar& r = g.edge_ratio_bounds[i];
        if (!(r < one))
            throw std::domain_error("family_weights: window too small to certify the tail");
        tail += g.edge_weights[i] * r / (one - r);
    }
    ApproxGridMeasure out;
    out.window = window;
    out.tail_bound = tail / total;
    out.nodes = std::move(g.nodes);
    for (auto& w : g.weights) out.weights.push_back(w / total);
    return out;
}

} // namespace detail

/// w^{bqJ}(x) = const |x| (ax,bx;q)_inf / (cx,dx;q)_inf on the two-sided grid
/// {b^{-1} q^k} u {a^{-1} q^k}, k >= 1, truncated at k <= window.
inline ApproxGridMeasure bqj_weights(const BqJParams& p, long window, long prec,
                                     const ApproxScalar& tol) {
    if (!p.admissible) throw std::invalid_argument("bqj_weights: needs admissible parameters");
    for (const ExactScalar* v : {&p.c, &p.d})
        if (!v->is_real()) throw std::invalid_argument("bqj_weights: real parameters only");
    auto A = [&](const ExactScalar& x) { return ApproxScalar::from_exact(x, prec); };
    ApproxScalar q = A(p.q), one = ApproxScalar::from_long(1, prec);
    auto weight = [&](const ExactScalar& x) {
        ApproxScalar ax = qpoch_infinite(A(p.a * x), q, tol), bx = qpoch_infinite(A(p.b * x), q, tol);
        ApproxScalar cx = qpoch_infinite(A(p.c * x), q, tol), dx = qpoch_infinite(A(p.d * x), q, tol);
        return A(x.abs()) * ax * bx / (cx * dx);
    };
    // small-x tail ratio bound at |x| = xbar:
    // q (1+|c|x)(1+|d|x) / ((1-|a|x)(1-|b|x))
    auto ratio_bound = [&](const ExactScalar& xbar) {
        ApproxScalar xb = A(xbar);
        ApproxScalar num = q * (one + A(p.c.abs()) * xb) * (one + A(p.d.abs()) * xb);
        ApproxScalar den = (one - A(p.a.abs()) * xb) * (one - A(p.b.abs()) * xb);
        if (!(den.sign() > 0)) return ApproxScalar::from_long(2, prec); // certify failure
        return num / den;
    };
    detail::RawGrid g;
    for (const ExactScalar& anchor : {p.b.inverse(), p.a.inverse()}) {
        for (long k = 1; k <= window; ++k) {
            ExactScalar x = anchor * p.q.pow(k);
            g.nodes.push_back(A(x));
            g.weights.push_back(weight(x));
        }
        g.edge_weights.push_back(g.weights.back());
        g.edge_ratio_bounds.push_back(ratio_bound((anchor * p.q.pow(window + 1)).abs()));
    }
    return detail::finish_grid(std::move(g), prec, window);
}

/// w^{qM}(x) = const |x| (ax;q)_inf / (cx,dx;q)_inf on beta^{-1} q^Z u a^{-1} q^{>=1}.
inline ApproxGridMeasure qm_weights(const QMeixnerParams& p, long window, long prec,
                                    const ApproxScalar& tol) {
    if (!p.admissible) throw std::invalid_argument("qm_weights: needs admissible parameters");
    for (const ExactScalar* v : {&p.c, &p.d})
        if (!v->is_real()) throw std::invalid_argument("qm_weights: real parameters only");
    auto A = [&](const ExactScalar& x) { return ApproxScalar::from_exact(x, prec); };
    ApproxScalar q = A(p.q), one = ApproxScalar::from_long(1, prec);
    auto weight = [&](const ExactScalar& x) {
        ApproxScalar ax = qpoch_infinite(A(p.a * x), q, tol);
        ApproxScalar cx = qpoch_infinite(A(p.c * x), q, tol), dx = qpoch_infinite(A(p.d * x), q, tol);
        return A(x.abs()) * ax / (cx * dx);
    };
    auto small_ratio_bound = [&](const ExactScalar& xbar) {
        ApproxScalar xb = A(xbar);
        ApproxScalar num = q * (one + A(p.c.abs()) * xb) * (one + A(p.d.abs()) * xb);
        ApproxScalar den = one - A(p.a.abs()) * xb;
        if (!(den.sign() > 0)) return ApproxScalar::from_long(2, prec);
        return num / den;
    };
    // large-|x| side: w(x/q)/w(x) <= (1/q)(1+|a|x/q) / ((|c|x/q - 1)(|d|x/q - 1))
    auto large_ratio_bound = [&](const ExactScalar& xbar) {
        ApproxScalar xq = A(xbar) / q;
        ApproxScalar cf = A(p.c.abs()) * xq - one, df = A(p.d.abs()) * xq - one;
        if (!(cf.sign() > 0) || !(df.sign() > 0)) return ApproxScalar::from_long(2, prec);
        return (one / q) * (one + A(p.a.abs()) * xq) / (cf * df);
    };
    detail::RawGrid g;
    for (long k = -window; k <= window; ++k) {
        ExactScalar x = p.beta.inverse() * p.q.pow(k);
        g.nodes.push_back(A(x));
        g.weights.push_back(weight(x));
    }
    g.edge_weights.push_back(g.weights.front());
    g.edge_ratio_bounds.push_back(large_ratio_bound((p.beta.inverse() * p.q.pow(-window)).abs()));
    g.edge_weights.push_back(g.weights.back());
    g.edge_ratio_bounds.push_back(small_ratio_bound((p.beta.inverse() * p.q.pow(window + 1)).abs()));
    for (long k = 1; k <= window; ++k) {
        ExactScalar x = p.a.inverse() * p.q.pow(k);
        g.nodes.push_back(A(x));
        g.weights.push_back(weight(x));
    }
    g.edge_weights.push_back(g.weights.back());
    g.edge_ratio_bounds.push_back(small_ratio_bound((p.a.inverse() * p.q.pow(window + 1)).abs()));
    return detail::finish_grid(std::move(g), prec, window);
}

/// w^{ASC}(x) = const |x| / (cx,dx;q)_inf on beta^{-1} q^Z u alpha^{-1} q^Z.
inline ApproxGridMeasure asc_weights(const ASCParams& p, long window, long prec,
                                     const ApproxScalar& tol) {
    if (!p.admissible) throw std::invalid_argument("asc_weights: needs admissible parameters");
    for (const ExactScalar* v : {&p.c, &p.d})
        if (!v->is_real()) throw std::invalid_argument("asc_weights: real parameters only");
    auto A = [&](const ExactScalar& x) { return ApproxScalar::from_exact(x, prec); };
    ApproxScalar q = A(p.q), one = ApproxScalar::from_long(1, prec);
    auto weight = [&](const ExactScalar& x) {
        ApproxScalar cx = qpoch_infinite(A(p.c * x), q, tol), dx = qpoch_infinite(A(p.d * x), q, tol);
        return A(x.abs()) / (cx * dx);
    };
    auto small_ratio_bound = [&](const ExactScalar& xbar) {
        ApproxScalar xb = A(xbar);
        return q * (one + A(p.c.abs()) * xb) * (one + A(p.d.abs()) * xb);
    };
    auto large_ratio_bound = [&](const ExactScalar& xbar) {
        ApproxScalar xq = A(xbar) / q;
        ApproxScalar cf = A(p.c.abs()) * xq - one, df = A(p.d.abs()) * xq - one;
        if (!(cf.sign() > 0) || !(df.sign() > 0)) return ApproxScalar::from_long(2, prec);
        return (one / q) / (cf * df);
    };
    detail::RawGrid g;
    for (const ExactScalar& anchor : {p.beta.inverse(), p.alpha.inverse()}) {
        for (long k = -window; k <= window; ++k) {
            ExactScalar x = anchor * p.q.pow(k);
            g.nodes.push_back(A(x));
            g.weights.push_back(weight(x));
        }
        g.edge_weights.push_back(g.weights[g.weights.size() - (2 * window + 1)]);
        g.edge_ratio_bounds.push_back(large_ratio_bound((anchor * p.q.pow(-window)).abs()));
        g.edge_weights.push_back(g.weights.back());
        g.edge_ratio_bounds.push_back(small_ratio_bound((anchor * p.q.pow(window + 1)).abs()));
    }
    return detail::finish_grid(std::move(g), prec, window);
}

} // namespace qaskey
