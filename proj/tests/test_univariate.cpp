#include "doctest.h"

#include "qaskey/univariate.hpp"
#include "support.hpp"

using namespace qaskey;

namespace {

QRacahParams qr_fixture() {
    return QRacahParams::grid_admissible(ExactScalar(1, 2), ExactScalar(1), 1, -2,
                                         ExactScalar(3, 5), ExactScalar(7, 10));
}
BqJParams bqj_fixture() {
    return BqJParams::make_admissible(ExactScalar(1, 2), ExactScalar(2), ExactScalar(-1, 2),
                                      ExactScalar(3, 5), ExactScalar(7, 10));
}
QMeixnerParams qm_fixture() {
    return QMeixnerParams::make_admissible(ExactScalar(1, 2), ExactScalar(2), ExactScalar(3, 5),
                                           ExactScalar(7, 10));
}
ASCParams asc_fixture() {
    return ASCParams::make_admissible(ExactScalar(1, 2), ExactScalar(3, 5), ExactScalar(7, 10));
}

double max_coeff_err(const UniPoly& diff) {
    double e = 0;
    for (int k = 0; k <= diff.degree(); ++k)
        e = std::max(e, approx_abs(diff.coeff(k), 64).to_double());
    return e;
}

// coefficientwise error relative to the target's magnitude
double rel_err(const UniPoly& got, const UniPoly& target) {
    double scale = 1;
    for (int k = 0; k <= target.degree(); ++k)
        scale = std::max(scale, approx_abs(target.coeff(k), 64).to_double());
    return max_coeff_err(got - target) / scale;
}

} // namespace

TEST_CASE("admissibility branch detection") {
    CHECK(qr_fixture().branch == 2);
    CHECK(qr_fixture().K() == 3);
    // negative-window branch
    QRacahParams neg = QRacahParams::grid_admissible(
        ExactScalar(1, 2), ExactScalar(1), 1, -1, ExactScalar(-3, 5), ExactScalar(-7, 10));
    CHECK(neg.branch == 3);
    // conjugate branch
    ExactScalar s0 = ExactScalar::parse("1/2+1/2*i");
    QRacahParams cplx = QRacahParams::grid_admissible(ExactScalar(1, 2), ExactScalar(1), 1, -1,
                                                      s0, s0.conj());
    CHECK(cplx.branch == 1);
    CHECK_THROWS(QRacahParams::grid_admissible(ExactScalar(1, 2), ExactScalar(1), 1, -1,
                                               ExactScalar(3), ExactScalar(7, 10)));

    CHECK(bqj_fixture().branch == 2);
    CHECK(qm_fixture().branch == 2);
    CHECK(asc_fixture().branch == 2);
    QMeixnerParams qm3 = QMeixnerParams::make_admissible(
        ExactScalar(1, 2), ExactScalar(2), ExactScalar(-3, 5), ExactScalar(-7, 10));
    CHECK(qm3.branch == 3);
    ASCParams asc3 = ASCParams::make_admissible(ExactScalar(1, 2), ExactScalar(-3, 5),
                                                ExactScalar(-7, 10));
    CHECK(asc3.branch == 3);
    CHECK_THROWS(QRacahParams::generic(ExactScalar(1, 2), ExactScalar(0), ExactScalar(1),
                                       ExactScalar(1), ExactScalar(1)));
    // chi inside q^Z is rejected
    CHECK_THROWS(QRacahParams::generic(ExactScalar(1, 2), ExactScalar(1), ExactScalar(1),
                                       ExactScalar(1), ExactScalar(1, 4)));
}

TEST_CASE("monicity across families") {
    auto qr = qr_fixture();
    auto bj = bqj_fixture();
    auto qm = qm_fixture();
    auto as = asc_fixture();
    for (long n = 0; n <= 8; ++n) {
        CHECK(phi_qracah(n, qr).is_monic());
        CHECK(phi_bqj(n, bj).is_monic());
        CHECK(phi_qm(n, qm).is_monic());
        CHECK(phi_asc(n, as).is_monic());
        CHECK(phi_qracah(n, qr).degree() == n);
    }
    CHECK(phi_qracah(0, qr) == UniPoly::one());
}

TEST_CASE("first-degree closed forms") {
    auto qm = qm_fixture();
    UniPoly p1 = phi_qm(1, qm);
    // phi_1^{qM} = x - (c+d)/(cd) + a/(qcd)
    ExactScalar expect0 =
        -(qm.c + qm.d) / (qm.c * qm.d) + qm.a / (qm.q * qm.c * qm.d);
    CHECK(p1.coeff(0) == expect0);
    CHECK(p1.coeff(1) == ExactScalar(1));

    auto as = asc_fixture();
    UniPoly a1 = phi_asc(1, as);
    // limit of the q-Meixner form as a -> 0: phi_1^{ASC} = x - 1/c - 1/d
    CHECK(a1.coeff(0) == -(as.c.inverse() + as.d.inverse()));
}

TEST_CASE("operators annihilate constants and satisfy eigen-equations") {
    auto bj = bqj_fixture();
    auto qm = qm_fixture();
    auto as = asc_fixture();
    CHECK(apply_operator(bj, UniPoly::one()).is_zero());
    CHECK(apply_operator(qm, UniPoly::one()).is_zero());
    CHECK(apply_operator(as, UniPoly::one()).is_zero());
    for (long n = 0; n <= 6; ++n) {
        CHECK(apply_operator(bj, phi_bqj(n, bj)) == eigenvalue_bqj(n, bj) * phi_bqj(n, bj));
        CHECK(apply_operator(qm, phi_qm(n, qm)) == eigenvalue_qm(n, qm) * phi_qm(n, qm));
        CHECK(apply_operator(as, phi_asc(n, as)) == eigenvalue_asc(n, as) * phi_asc(n, as));
    }
}

TEST_CASE("q-Racah is invariant under parameter permutations") {
    auto p = qr_fixture();
    ExactScalar s[4] = {p.s0, p.s1, p.s2, p.s3};
    int perms[][4] = {{1, 0, 2, 3}, {0, 1, 3, 2}, {2, 3, 0, 1}, {3, 0, 1, 2}, {1, 2, 3, 0}};
    for (auto& pm : perms) {
        QRacahParams pp = QRacahParams::generic(p.q, s[pm[0]], s[pm[1]], s[pm[2]], s[pm[3]]);
        for (long n = 0; n <= 6; ++n) CHECK(phi_qracah(n, pp) == phi_qracah(n, p));
    }
}

TEST_CASE("reality of coefficients under each admissibility branch") {
    auto real_branch = qr_fixture();
    ExactScalar s0 = ExactScalar::parse("1/2+1/3*i");
    QRacahParams conj_branch = QRacahParams::grid_admissible(ExactScalar(1, 2), ExactScalar(1), 1,
                                                             -1, s0, s0.conj());
    QRacahParams neg_branch = QRacahParams::grid_admissible(
        ExactScalar(1, 2), ExactScalar(1), 2, -1, ExactScalar(-3, 5), ExactScalar(-7, 10));
    for (long n = 0; n <= 6; ++n) {
        CHECK(phi_qracah(n, real_branch).has_real_coeffs());
        CHECK(phi_qracah(n, conj_branch).has_real_coeffs());
        CHECK(phi_qracah(n, neg_branch).has_real_coeffs());
    }
    // conjugate big q-Jacobi pair also yields real polynomials
    ExactScalar c = ExactScalar::parse("3/5+1/5*i");
    BqJParams bj = BqJParams::make_admissible(ExactScalar(1, 2), ExactScalar(2),
                                              ExactScalar(-1, 2), c, c.conj());
    CHECK(bj.branch == 1);
    for (long n = 0; n <= 5; ++n) CHECK(phi_bqj(n, bj).has_real_coeffs());
}

TEST_CASE("q-Racah eigenvalues are pairwise distinct when chi < 0") {
    auto p = qr_fixture();
    REQUIRE(p.chi() < ExactScalar(0));
    for (long m = 0; m <= 12; ++m)
        for (long n = m + 1; n <= 12; ++n)
            CHECK(eigenvalue_qracah(m, p) != eigenvalue_qracah(n, p));
}

TEST_CASE("grid nodes") {
    ExactScalar q(1, 2), one(1);
    CHECK(qracah_node(one, q, 0) == ExactScalar(0));
    CHECK(qracah_node(one, q, 1) == ExactScalar(-3, 2));
    CHECK(qracah_node(one, q, -1) == ExactScalar(3, 2));
    auto grid = qracah_grid(one, q, -4, 4);
    for (size_t i = 0; i + 1 < grid.size(); ++i) CHECK(grid[i] > grid[i + 1]);
}

TEST_CASE("grid operator: boundary vanishing and eigenfunctions") {
    auto p = qr_fixture();
    CHECK(qracah_beta(p, p.L).is_zero());
    CHECK(qracah_delta(p, p.R).is_zero());

    long count = p.L - p.R + 3;
    std::vector<ExactScalar> ones(count, ExactScalar(1));
    for (const auto& v : qracah_operator_on_grid(p, ones)) CHECK(v.is_zero());

    for (long n = 0; n <= p.K(); ++n) {
        UniPoly phi = phi_qracah(n, p);
        std::vector<ExactScalar> f;
        for (long m = p.R - 1; m <= p.L + 1; ++m)
            f.push_back(phi.eval(qracah_node(p.zeta, p.q, m)));
        auto Df = qracah_operator_on_grid(p, f);
        ExactScalar lam = eigenvalue_qracah(n, p);
        for (long m = p.R; m <= p.L; ++m)
            CHECK(Df[m - p.R] == lam * f[m - (p.R - 1)]);
    }
}

TEST_CASE("exact weights: balance, positivity, normalization") {
    auto p = qr_fixture();
    auto wt = qracah_weights(p);
    REQUIRE(static_cast<long>(wt.weight.size()) == p.K() + 1);
    ExactScalar total(0);
    for (const auto& w : wt.weight) {
        CHECK(w > ExactScalar(0));
        total += w;
    }
    CHECK(total == ExactScalar(1));
    for (long m = p.R; m < p.L; ++m)
        CHECK(wt.weight[wt.index_of(m)] * qracah_beta(p, m) ==
              wt.weight[wt.index_of(m + 1)] * qracah_delta(p, m + 1));

    // K = 0: a single atom of mass 1
    QRacahParams atom = QRacahParams::grid_admissible(ExactScalar(1, 2), ExactScalar(1), 0, 0,
                                                      ExactScalar(3, 5), ExactScalar(7, 10));
    auto w0 = qracah_weights(atom);
    REQUIRE(w0.weight.size() == 1);
    CHECK(w0.weight[0] == ExactScalar(1));

    // complex-conjugate branch still yields real positive weights
    ExactScalar s0 = ExactScalar::parse("1/2+1/2*i");
    QRacahParams cplx = QRacahParams::grid_admissible(ExactScalar(1, 2), ExactScalar(1), 1, -1,
                                                      s0, s0.conj());
    for (const auto& w : qracah_weights(cplx).weight) CHECK(w > ExactScalar(0));
}

TEST_CASE("exact q-Racah orthogonality with closed-form norms") {
    auto p = qr_fixture();
    auto wt = qracah_weights(p);
    long K = p.K();
    std::vector<UniPoly> phi;
    for (long n = 0; n <= K + 2; ++n) phi.push_back(phi_qracah(n, p));

    CHECK(qracah_norm_h(0, p) == ExactScalar(1));
    for (long m = 0; m <= K; ++m)
        for (long n = 0; n <= K; ++n) {
            ExactScalar sum(0);
            for (size_t i = 0; i < wt.node.size(); ++i)
                sum += phi[m].eval(wt.node[i]) * phi[n].eval(wt.node[i]) * wt.weight[i];
            ExactScalar expect = (m == n) ? qracah_norm_h(n, p) : ExactScalar(0);
            CHECK(sum == expect);
        }
    for (long n = 0; n <= K; ++n) CHECK(qracah_norm_h(n, p) > ExactScalar(0));
    // h_n = 0 for n > K through the (q^{-K};q)_n factor
    for (long n = K + 1; n <= K + 2; ++n) CHECK(qracah_norm_h(n, p) == ExactScalar(0));
    // and those polynomials vanish identically on the grid
    for (long n = K + 1; n <= K + 2; ++n)
        for (const auto& y : wt.node) CHECK(phi[n].eval(y) == ExactScalar(0));
}

TEST_CASE("explicit 6psi6-normalized weights match the balance weights") {
    auto p = qr_fixture();
    auto wt = qracah_weights(p);
    long prec = 128;
    ApproxScalar tol = ApproxScalar::parse("1e-34@128");
    for (long m = p.R; m <= p.L; ++m) {
        ApproxScalar explicit_w = qracah_weight_explicit(p, m, prec, tol);
        ApproxScalar err = explicit_w.distance_to(wt.weight[wt.index_of(m)]);
        CHECK(err < ApproxScalar::parse("1e-25@128"));
    }
    // off the support the formula vanishes
    CHECK(qracah_weight_explicit(p, p.L + 1, prec, tol).abs() <
          ApproxScalar::parse("1e-25@128"));
    CHECK(qracah_weight_explicit(p, p.R - 1, prec, tol).is_zero());
}

TEST_CASE("univariate degenerations along q-power paths") {
    auto qm = qm_fixture();
    auto as = asc_fixture();
    // b -> 0: big q-Jacobi -> q-Meixner. The relative error is O(b); taking
    // M in steps of two deep in the asymptotic regime gives ratio q^2.
    for (long n = 1; n <= 5; ++n) {
        UniPoly target = phi_qm(n, qm);
        double prev = 0, last_ratio = 0;
        bool first = true;
        for (long M = 12 + 2 * n; M <= 18 + 2 * n; M += 2) {
            ExactScalar b = -qm.q.pow(M); // beta = -1
            BqJParams bj = BqJParams::generic(qm.q, qm.a, b, qm.c, qm.d);
            double err = rel_err(phi_bqj(n, bj), target);
            if (!first) {
                CHECK(err < prev);
                last_ratio = err / prev;
            }
            prev = err;
            first = false;
        }
        CHECK(last_ratio > 0.2);
        CHECK(last_ratio < 0.3); // q^2 = 0.25
    }
    // a -> 0: q-Meixner -> ASC
    for (long n = 1; n <= 5; ++n) {
        UniPoly target = phi_asc(n, as);
        double prev = 0, last_ratio = 0;
        bool first = true;
        for (long M = 12 + 2 * n; M <= 18 + 2 * n; M += 2) {
            QMeixnerParams qma = QMeixnerParams::generic(as.q, as.q.pow(M), as.c, as.d);
            double err = rel_err(phi_qm(n, qma), target);
            if (!first) {
                CHECK(err < prev);
                last_ratio = err / prev;
            }
            prev = err;
            first = false;
        }
        CHECK(last_ratio > 0.2);
        CHECK(last_ratio < 0.3);
    }
}

TEST_CASE("Koornwinder limit: q-Racah -> big q-Jacobi (univariate)") {
    auto bj = bqj_fixture(); // -ab = 1, zeta = 1/2
    for (long n = 1; n <= 4; ++n) {
        UniPoly target = phi_bqj(n, bj);
        double prev = 0;
        bool first = true;
        for (long M = 1; M <= 4; ++M) {
            ExactScalar eps = bj.q.pow(M + 1); // q^{M+1}/sqrt(-ab)
            QRacahParams qr = QRacahParams::generic(
                bj.q, eps * bj.c, eps * bj.d, -(bj.q / (eps * bj.a)), -(bj.q / (eps * bj.b)));
            UniPoly scaled = phi_qracah(n, qr).scale_from_top(eps);
            double err = max_coeff_err(scaled - target);
            if (!first) CHECK(err < prev);
            prev = err;
            first = false;
        }
    }
}

TEST_CASE("numeric weights for the unbounded families") {
    long prec = 128;
    ApproxScalar tol = ApproxScalar::parse("1e-34@128");
    ApproxScalar one = ApproxScalar::from_long(1, prec);

    auto bj = bqj_fixture();
    auto mb = bqj_weights(bj, 80, prec, tol);
    ApproxScalar total = ApproxScalar::from_long(0, prec);
    for (const auto& w : mb.weights) {
        CHECK(w.sign() > 0);
        total += w;
    }
    CHECK((total - one).abs() < ApproxScalar::parse("1e-30@128"));
    CHECK(mb.tail_bound < ApproxScalar::parse("1e-22@128"));

    // numeric orthogonality of the big q-Jacobi family on the truncated grid
    std::vector<UniPoly> phis;
    for (long n = 0; n <= 4; ++n) phis.push_back(phi_bqj(n, bj));
    std::vector<std::vector<ApproxScalar>> vals;
    for (const auto& phi : phis) {
        std::vector<ApproxScalar> v;
        for (const auto& x : mb.nodes) {
            ApproxScalar acc = ApproxScalar::from_long(0, prec);
            for (int k = phi.degree(); k >= 0; --k)
                acc = acc * x + ApproxScalar::from_exact(phi.coeff(k), prec);
            v.push_back(acc);
        }
        vals.push_back(std::move(v));
    }
    std::vector<ApproxScalar> diag;
    for (long n = 0; n <= 4; ++n) {
        ApproxScalar s = ApproxScalar::from_long(0, prec);
        for (size_t i = 0; i < mb.nodes.size(); ++i) s += vals[n][i] * vals[n][i] * mb.weights[i];
        CHECK(s.sign() > 0);
        diag.push_back(s);
    }
    for (long m = 0; m <= 4; ++m)
        for (long n = m + 1; n <= 4; ++n) {
            ApproxScalar s = ApproxScalar::from_long(0, prec);
            for (size_t i = 0; i < mb.nodes.size(); ++i)
                s += vals[m][i] * vals[n][i] * mb.weights[i];
            ApproxScalar rel = s.abs() / (diag[m] * diag[n]).sqrt();
            CHECK(rel < ApproxScalar::parse("1e-20@128"));
        }

    auto qm = qm_fixture();
    auto mq = qm_weights(qm, 40, prec, tol);
    for (const auto& w : mq.weights) CHECK(w.sign() > 0);
    CHECK(mq.tail_bound < ApproxScalar::parse("1e-8@128"));

    auto as = asc_fixture();
    auto ma = asc_weights(as, 40, prec, tol);
    for (const auto& w : ma.weights) CHECK(w.sign() > 0);
    CHECK(ma.tail_bound < ApproxScalar::parse("1e-8@128"));

    CHECK_THROWS_AS((void)bqj_weights(bj, 2, prec, tol), std::domain_error);
}
