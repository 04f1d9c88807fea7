#include "doctest.h"

#include "qaskey/multisym.hpp"
#include "qaskey/unipoly.hpp"
#include "support.hpp"

using namespace qaskey;

TEST_CASE("newton factorial powers") {
    std::vector<ExactScalar> nodes{ExactScalar(1), ExactScalar(1, 2), ExactScalar(3)};
    CHECK(newton_power(nodes, 0) == UniPoly::one());
    std::vector<ExactScalar> zeros(4, ExactScalar(0));
    CHECK(newton_power(zeros, 3) == UniPoly::x() * UniPoly::x() * UniPoly::x());
    UniPoly p = newton_power(nodes, 2);
    CHECK(p.coeff(2) == ExactScalar(1));
    CHECK(p.coeff(1) == ExactScalar(-3, 2));
    CHECK(p.coeff(0) == ExactScalar(1, 2));
    CHECK_THROWS(newton_power(nodes, 5));
}

TEST_CASE("unipoly arithmetic and evaluation") {
    auto rng = qtest::make_rng(31);
    UniPoly a(std::vector<ExactScalar>{ExactScalar(1), ExactScalar(-2), ExactScalar(1, 3)});
    UniPoly b(std::vector<ExactScalar>{ExactScalar(0), ExactScalar(5)});
    for (int t = 0; t < 20; ++t) {
        ExactScalar x = qtest::random_rational_any(rng);
        CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
        CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
        ExactScalar c = qtest::random_rational(rng);
        CHECK(a.scale_argument(c).eval(x) == a.eval(c * x));
    }
    CHECK(a.scale_from_top(ExactScalar(1, 2)).coeff(2) == a.coeff(2));
    CHECK(a.scale_from_top(ExactScalar(1, 2)).coeff(0) == a.coeff(0) * ExactScalar(1, 4));
}

TEST_CASE("alternant quotient: constants and Schur shapes") {
    // degrees (1,0) in 2 variables: S_empty = 1
    std::vector<UniPoly> r2{UniPoly::x(), UniPoly::one()};
    CHECK(alternant_quotient(r2, 2) == MultiSymPoly::one(2));

    // degrees (2,1,0): S_empty in 3 variables
    UniPoly x = UniPoly::x();
    std::vector<UniPoly> r3{x * x, x, UniPoly::one()};
    CHECK(alternant_quotient(r3, 3) == MultiSymPoly::one(3));

    // degrees (3,1,0): shape (1), i.e. m_1  (bialternant oracle)
    std::vector<UniPoly> r31{x * x * x, x, UniPoly::one()};
    MultiSymPoly s1(3);
    s1.add_term(Partition{1}, ExactScalar(1));
    CHECK(alternant_quotient(r31, 3) == s1);

    // degrees (4,1,0): shape (2) = m_2 + m_11
    std::vector<UniPoly> r41{x * x * x * x, x, UniPoly::one()};
    MultiSymPoly s2(3);
    s2.add_term(Partition{2}, ExactScalar(1));
    s2.add_term(Partition{1, 1}, ExactScalar(1));
    CHECK(alternant_quotient(r41, 3) == s2);

    CHECK_THROWS(alternant_quotient(std::vector<UniPoly>{x, x}, 2));
}

TEST_CASE("alternant of plain powers matches the Jacobi-Trudi oracle") {
    for (int N = 1; N <= 4; ++N) {
        for (const Partition& la : enumerate_partitions(N, 4, 4)) {
            std::vector<UniPoly> rows;
            for (int i = 1; i <= N; ++i) {
                UniPoly row = UniPoly::one();
                for (int d = 0; d < la.part(i - 1) + N - i; ++d) row = row * UniPoly::x();
                rows.push_back(row);
            }
            CHECK(alternant_quotient(rows, N) == qtest::jacobi_trudi_schur(la, N));
            CHECK(schur_poly(la, N) == qtest::jacobi_trudi_schur(la, N));
        }
    }
}

TEST_CASE("monomial basis multiplication") {
    // m_1 * m_1 = m_2 + 2 m_11
    MultiSymPoly m1(3);
    m1.add_term(Partition{1}, ExactScalar(1));
    MultiSymPoly prod = m1 * m1;
    CHECK(prod.coeff(Partition{2}) == ExactScalar(1));
    CHECK(prod.coeff(Partition{1, 1}) == ExactScalar(2));

    // S_1 * S_1 = S_2 + S_11 (Pieri oracle through monomial_to_schur)
    auto sch = monomial_to_schur(prod);
    CHECK(sch.size() == 2);
    CHECK(sch[Partition{2}] == ExactScalar(1));
    CHECK(sch[Partition{1, 1}] == ExactScalar(1));

    // multiplication agrees with pointwise evaluation
    auto rng = qtest::make_rng(32);
    MultiSymPoly A(3), B(3);
    A.add_term(Partition{2, 1}, qtest::random_rational(rng));
    A.add_term(Partition{1}, qtest::random_rational(rng));
    B.add_term(Partition{2}, qtest::random_rational(rng));
    B.add_term(Partition{1, 1, 1}, qtest::random_rational(rng));
    B.add_term(Partition{}, qtest::random_rational(rng));
    for (int t = 0; t < 12; ++t) {
        std::vector<ExactScalar> pt = qtest::random_nodes(rng, 3);
        CHECK((A * B).eval(pt) == A.eval(pt) * B.eval(pt));
    }
}

TEST_CASE("monomial to Schur round-trip") {
    auto rng = qtest::make_rng(33);
    for (int t = 0; t < 5; ++t) {
        MultiSymPoly p(4);
        for (const Partition& la : enumerate_partitions(4, 3, 4))
            p.add_term(la, qtest::random_rational_any(rng));
        auto sch = monomial_to_schur(p);
        MultiSymPoly back(4);
        for (auto& [la, c] : sch) back += c * schur_poly(la, 4);
        CHECK(back == p);
    }
}

TEST_CASE("substitute_last agrees with evaluation") {
    auto rng = qtest::make_rng(34);
    MultiSymPoly p(3);
    p.add_term(Partition{2, 1}, ExactScalar(3));
    p.add_term(Partition{1, 1, 1}, ExactScalar(-1, 2));
    p.add_term(Partition{2}, ExactScalar(5, 7));
    p.add_term(Partition{}, ExactScalar(4));
    ExactScalar c = qtest::random_rational(rng);
    MultiSymPoly sub = p.substitute_last(c);
    CHECK(sub.nvars() == 2);
    for (int t = 0; t < 10; ++t) {
        std::vector<ExactScalar> pt = qtest::random_nodes(rng, 2);
        std::vector<ExactScalar> full = pt;
        full.push_back(c);
        CHECK(sub.eval(pt) == p.eval(full));
    }
}

TEST_CASE("multiparameter Schur: basics") {
    auto rng = qtest::make_rng(35);
    std::vector<ExactScalar> nodes = qtest::random_nodes(rng, 10);

    CHECK(mp_schur(Partition{}, 3, nodes) == MultiSymPoly::one(3));
    CHECK(mp_schur(Partition{1, 1, 1, 1}, 3, nodes).is_zero()); // l(mu) > N

    // s_(1)|N = p_1 - (c_0 + ... + c_{N-1})
    for (int N = 1; N <= 4; ++N) {
        MultiSymPoly s = mp_schur(Partition{1}, N, nodes);
        ExactScalar csum(0);
        for (int i = 0; i < N; ++i) csum += nodes[i];
        MultiSymPoly expect(N);
        expect.add_term(Partition{1}, ExactScalar(1));
        expect.add_term(Partition{}, -csum);
        CHECK(s == expect);
    }

    // top homogeneous component is the classical Schur polynomial
    for (const Partition& mu : enumerate_partitions(3, 3, 3)) {
        MultiSymPoly s = mp_schur(mu, 3, nodes);
        CHECK(s.top_homogeneous() == schur_poly(mu, 3));
    }
}

TEST_CASE("multiparameter Schur: extra vanishing") {
    auto rng = qtest::make_rng(36);
    std::vector<ExactScalar> nodes = qtest::random_nodes(rng, 12);
    for (int N = 1; N <= 3; ++N) {
        for (const Partition& la : enumerate_partitions(N, 3, 3)) {
            std::vector<ExactScalar> grid;
            for (int i = 1; i <= N; ++i) grid.push_back(nodes[la.part(i - 1) + N - i]);
            for (const Partition& mu : enumerate_partitions(N, 3, 3)) {
                ExactScalar v = mp_schur(mu, N, nodes).eval(grid);
                if (!contains(mu, la))
                    CHECK(v == ExactScalar(0));
                else if (mu == la)
                    CHECK(v != ExactScalar(0)); // generically nonzero at its own node
            }
        }
    }
}

TEST_CASE("multiparameter Schur: quasi-stability") {
    auto rng = qtest::make_rng(37);
    std::vector<ExactScalar> nodes = qtest::random_nodes(rng, 12);
    std::vector<ExactScalar> shifted(nodes.begin() + 1, nodes.end());
    for (int N = 2; N <= 3; ++N)
        for (const Partition& mu : enumerate_partitions(N - 1, 3, 3)) {
            MultiSymPoly lhs = mp_schur(mu, N, nodes).substitute_last(nodes[0]);
            CHECK(lhs == mp_schur(mu, N - 1, shifted));
        }
}

TEST_CASE("tableau route matches the alternant route") {
    auto rng = qtest::make_rng(38);
    std::vector<ExactScalar> nodes = qtest::random_nodes(rng, 12);
    for (int N = 2; N <= 4; ++N)
        for (const Partition& mu : enumerate_partitions(N, 3, 3))
            CHECK(mp_schur_tableau(mu, N, nodes) == mp_schur_alternant(mu, N, nodes));
}

TEST_CASE("tableau route at large N") {
    // geometric nodes, N far beyond the alternant's reach
    ExactScalar q(1, 2);
    int N = 12;
    std::vector<ExactScalar> nodes;
    for (int i = 0; i < N + 4; ++i) nodes.push_back(q.pow(N - i - 1));
    MultiSymPoly s = mp_schur(Partition{2, 1}, N, nodes);
    CHECK(s.degree() == 3);
    CHECK(s.top_homogeneous() == schur_poly(Partition{2, 1}, N));
    // and the N=1..0 sum rule: s_(1) constant term = -(sum of first N nodes)
    MultiSymPoly s1 = mp_schur(Partition{1}, N, nodes);
    ExactScalar csum(0);
    for (int i = 0; i < N; ++i) csum += nodes[i];
    CHECK(s1.coeff(Partition{}) == -csum);
}
