#include "doctest.h"

#include "qaskey/qpoch.hpp"
#include "support.hpp"

using namespace qaskey;

TEST_CASE("finite q-Pochhammer examples") {
    auto rng = qtest::make_rng(21);
    ExactScalar x = qtest::random_rational(rng), q = qtest::random_q(rng);
    CHECK(qpoch_finite(x, q, 0) == ExactScalar(1));
    CHECK(qpoch_finite(ExactScalar(1, 2), ExactScalar(1, 2), 2) == ExactScalar(3, 8));
    for (long n = 1; n <= 5; ++n) CHECK(qpoch_finite(ExactScalar(1), q, n) == ExactScalar(0));
}

TEST_CASE("splitting identity (x;q)_{m+n} = (x;q)_m (x q^m;q)_n") {
    auto rng = qtest::make_rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        ExactScalar x = qtest::random_rational(rng), q = qtest::random_q(rng);
        for (long m = 0; m <= 8; m += 2)
            for (long n = 0; n <= 8; n += 3)
                CHECK(qpoch_finite(x, q, m + n) ==
                      qpoch_finite(x, q, m) * qpoch_finite(x * q.pow(m), q, n));
    }
}

TEST_CASE("partition-indexed q-Pochhammer") {
    auto rng = qtest::make_rng(23);
    ExactScalar x = qtest::random_rational(rng), q = qtest::random_q(rng);
    CHECK(qpoch_partition(x, q, Partition{}) == ExactScalar(1));
    CHECK(qpoch_partition(x, q, Partition{4}) == qpoch_finite(x, q, 4));
    CHECK(qpoch_partition(ExactScalar(1, 3), ExactScalar(1, 2), Partition{2, 1}) ==
          ExactScalar(5, 27));
    // product-over-rows property
    Partition mu{3, 2, 2, 1};
    ExactScalar prod(1);
    for (int i = 1; i <= mu.length(); ++i)
        prod *= qpoch_finite(x * q.pow(1 - i), q, mu.part(i - 1));
    CHECK(qpoch_partition(x, q, mu) == prod);
}

TEST_CASE("signed q-Pochhammer inverts cleanly") {
    auto rng = qtest::make_rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        ExactScalar x = qtest::random_rational(rng), q = qtest::random_q(rng);
        for (long m = 1; m <= 5; ++m) {
            // (x;q)_{-m} = 1/(x q^{-m}; q)_m
            CHECK(qpoch_signed(x, q, -m) == qpoch_finite(x * q.pow(-m), q, m).inverse());
        }
    }
}

TEST_CASE("Euler expansion of the infinite symbol") {
    // (u;q)_inf = (1-u) (uq;q)_inf, coefficientwise: e_n(q) = e_n(q)|shift - e_{n-1}(q)|shift
    ExactScalar q(2, 7);
    for (long n = 1; n <= 8; ++n) {
        ExactScalar lhs = euler_infinite_coeff(q, n);
        // coefficient of u^n in (1-u)*sum_m e_m q^m u^m
        ExactScalar rhs = euler_infinite_coeff(q, n) * q.pow(n) -
                          euler_infinite_coeff(q, n - 1) * q.pow(n - 1);
        CHECK(lhs == rhs);
    }
    CHECK(euler_infinite_coeff(q, 0) == ExactScalar(1));
}

TEST_CASE("infinite q-Pochhammer numerics") {
    long prec = 192;
    ApproxScalar q = ApproxScalar::from_exact(ExactScalar(1, 2), prec);
    ApproxScalar tol = ApproxScalar::parse("1e-40@192");

    CHECK(qpoch_infinite(ApproxScalar(prec), q, tol) ==
          ApproxScalar::from_long(1, prec)); // x = 0

    // Euler product (q;q)_inf against the pentagonal number series.
    ApproxScalar euler = qpoch_infinite(q, q, tol);
    ApproxScalar series = ApproxScalar::from_long(0, prec);
    for (long k = -40; k <= 40; ++k) {
        long e = k * (3 * k - 1) / 2;
        ApproxScalar term = q.pow_long(e);
        if (k % 2 != 0) term = -term;
        series += term;
    }
    CHECK((euler - series).abs() < ApproxScalar::parse("1e-35@192"));

    // x = q^{-m}: a factor vanishes exactly
    for (long m = 0; m <= 3; ++m)
        CHECK(qpoch_infinite(q.pow_long(-m), q, tol).is_zero());

    CHECK_THROWS(qpoch_infinite(q, ApproxScalar::from_long(2, prec), tol));
}

TEST_CASE("approx Pochhammer agrees with exact") {
    ExactScalar x(3, 5), q(1, 2);
    for (long n = 0; n <= 6; ++n) {
        ApproxScalar a =
            apoch_finite(ApproxScalar::from_exact(x), ApproxScalar::from_exact(q), n);
        CHECK(a.distance_to(qpoch_finite(x, q, n)).to_double() < 1e-35);
    }
    for (long m = -4; m <= 4; ++m) {
        ApproxScalar a =
            apoch_signed(ApproxScalar::from_exact(x), ApproxScalar::from_exact(q), m);
        CHECK(a.distance_to(qpoch_signed(x, q, m)).to_double() < 1e-30);
    }
}
