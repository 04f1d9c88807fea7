#pragma once

#include <initializer_list>
#include <stdexcept>

#include "qaskey/approx.hpp"
#include "qaskey/exact.hpp"
#include "qaskey/partition.hpp"

namespace qaskey {

/// (x;q)_n = prod_{k=0}^{n-1} (1 - x q^k); empty product for n = 0.
inline ExactScalar qpoch_finite(const ExactScalar& x, const ExactScalar& q, long n) {
    if (n < 0) throw std::invalid_argument("qpoch_finite: negative length");
    ExactScalar acc(1), xq = x;
    for (long k = 0; k < n; ++k) {
        acc *= ExactScalar(1) - xq;
        xq *= q;
    }
    return acc;
}

/// Signed q-Pochhammer: for m < 0, (x;q)_m = 1 / prod_{k=1}^{-m} (1 - x q^{-k}).
inline ExactScalar qpoch_signed(const ExactScalar& x, const ExactScalar& q, long m) {
    if (m >= 0) return qpoch_finite(x, q, m);
    ExactScalar acc(1);
    for (long k = 1; k <= -m; ++k) {
        ExactScalar f = ExactScalar(1) - x * q.pow(-k);
        if (f.is_zero()) throw std::domain_error("qpoch_signed: vanishing factor");
        acc *= f;
    }
    return acc.inverse();
}

/// (x;q)_mu = prod_i (x q^{1-i}; q)_{mu_i}.
inline ExactScalar qpoch_partition(const ExactScalar& x, const ExactScalar& q, const Partition& mu) {
    ExactScalar acc(1);
    for (int i = 1; i <= mu.length(); ++i)
        acc *= qpoch_finite(x * q.pow(1 - i), q, mu.part(i - 1));
    return acc;
}

/// (x1,...,xm;q)_n.
inline ExactScalar qpoch_finite(std::initializer_list<ExactScalar> xs, const ExactScalar& q, long n) {
    ExactScalar acc(1);
    for (const auto& x : xs) acc *= qpoch_finite(x, q, n);
    return acc;
}

/// (x1,...,xm;q)_mu.
inline ExactScalar qpoch_partition(std::initializer_list<ExactScalar> xs, const ExactScalar& q,
                                   const Partition& mu) {
    ExactScalar acc(1);
    for (const auto& x : xs) acc *= qpoch_partition(x, q, mu);
    return acc;
}

/// Coefficient of u^n in Euler's expansion (u;q)_infty = sum_n e_n u^n,
/// e_n = (-1)^n q^{n(n-1)/2} / (q;q)_n.
inline ExactScalar euler_infinite_coeff(const ExactScalar& q, long n) {
    ExactScalar sign = (n % 2 == 0) ? ExactScalar(1) : ExactScalar(-1);
    return sign * q.pow(n * (n - 1) / 2) / qpoch_finite(q, q, n);
}

// ---- numeric (ApproxScalar) versions ----

inline ApproxScalar apoch_finite(const ApproxScalar& x, const ApproxScalar& q, long n) {
    ApproxScalar one = ApproxScalar::from_long(1, x.precision_bits());
    ApproxScalar acc = one, xq = x;
    for (long k = 0; k < n; ++k) {
        acc *= one - xq;
        xq *= q;
    }
    return acc;
}

inline ApproxScalar apoch_signed(const ApproxScalar& x, const ApproxScalar& q, long m) {
    ApproxScalar one = ApproxScalar::from_long(1, x.precision_bits());
    if (m >= 0) return apoch_finite(x, q, m);
    ApproxScalar acc = one;
    for (long k = 1; k <= -m; ++k) acc *= one - x * q.pow_long(-k);
    if (acc.is_zero()) throw std::domain_error("apoch_signed: vanishing factor");
    return one / acc;
}

/// (x;q)_infty for |q| < 1, truncated at the first K with |x| q^K / (1-q) < tol.
/// The geometric tail estimate makes the relative error O(tol).
inline ApproxScalar qpoch_infinite(const ApproxScalar& x, const ApproxScalar& q,
                                   const ApproxScalar& tol) {
    long prec = x.precision_bits();
    ApproxScalar one = ApproxScalar::from_long(1, prec);
    if (!(q.abs() < one)) throw std::domain_error("qpoch_infinite: requires |q| < 1");
    if (tol.sign() <= 0) throw std::invalid_argument("qpoch_infinite: tolerance must be positive");

    ApproxScalar acc = one;
    ApproxScalar xq = x;
    ApproxScalar one_minus_q = one - q.abs();
    for (long k = 0;; ++k) {
        if (xq.abs() / one_minus_q < tol) break;
        ApproxScalar f = one - xq;
        if (f.is_zero()) return ApproxScalar(prec); // a factor vanishes exactly
        acc *= f;
        xq *= q;
        if (k > 8L * 1000 * 1000) throw std::runtime_error("qpoch_infinite: no convergence");
    }
    return acc;
}

} // namespace qaskey
