#pragma once

// Shared test helpers: seeded random scalars and independent oracles.

#include <random>
#include <vector>

#include "qaskey/exact.hpp"
#include "qaskey/multisym.hpp"
#include "qaskey/partition.hpp"

namespace qtest {

using qaskey::ExactScalar;
using qaskey::MultiSymPoly;
using qaskey::Partition;

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

/// Nonzero rational with numerator in [-9,9] and denominator in [1,9].
inline ExactScalar random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    long n = num(rng);
    if (n == 0) n = 1;
    return ExactScalar(n, den(rng));
}

inline ExactScalar random_rational_any(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    return ExactScalar(num(rng), den(rng));
}

/// Rational strictly inside (0, 1).
inline ExactScalar random_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> den(2, 12);
    long d = den(rng);
    std::uniform_int_distribution<long> num(1, d - 1);
    return ExactScalar(num(rng), d);
}

inline std::vector<ExactScalar> random_nodes(std::mt19937_64& rng, int count) {
    std::vector<ExactScalar> v;
    v.reserve(count);
    for (int i = 0; i < count; ++i) v.push_back(random_rational_any(rng));
    return v;
}

/// Complete homogeneous h_k in N variables, monomial basis.
inline MultiSymPoly complete_homogeneous(long k, int N) {
    MultiSymPoly r(N);
    if (k < 0) return r;
    for (const Partition& nu : qaskey::enumerate_partitions(N, static_cast<int>(k), k))
        if (nu.size() == k) r.add_term(nu, ExactScalar(1));
    return r;
}

/// Independent Schur oracle: Jacobi-Trudi determinant det[h_{la_i - i + j}].
inline MultiSymPoly jacobi_trudi_schur(const Partition& la, int N) {
    if (la.empty()) return MultiSymPoly::one(N);
    if (la.length() > N) return MultiSymPoly(N);
    int l = la.length();
    std::vector<int> perm(l);
    for (int i = 0; i < l; ++i) perm[i] = i;
    MultiSymPoly det(N);
    do {
        int sign = qaskey::detail::permutation_sign(perm);
        MultiSymPoly term = MultiSymPoly::one(N);
        bool zero = false;
        for (int i = 0; i < l && !zero; ++i) {
            long k = la.part(i) - (i + 1) + (perm[i] + 1);
            if (k < 0) {
                zero = true;
                break;
            }
            term = term * complete_homogeneous(k, N);
        }
        if (!zero) det += (sign > 0 ? ExactScalar(1) : ExactScalar(-1)) * term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace qtest
