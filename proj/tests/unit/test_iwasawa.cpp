#include <gtest/gtest.h>

#include <random>

#include "ellmu/analysis.hpp"
#include "ellmu/errors.hpp"
#include "ellmu/iwasawa.hpp"

using namespace ellmu;

namespace {

l_polynomial L(std::uint64_t q, std::initializer_list<long long> c, int sign) {
    l_polynomial P;
    P.q = q;
    P.sign = sign;
    P.coeffs.clear();
    for (auto x : c) P.coeffs.emplace_back(x);
    return P;
}

exact_rational R(long long n, long long d = 1) { return exact_rational(n, d); }

const l_polynomial kSextic = L(7, {1, 0, -35, 0, 1715, 0, -117649}, -1);

}  // namespace

TEST(NewtonPolygon, QuadraticExample) {
    const auto np = compute_newton_polygon(L(3, {1, 0, -9}, -1));
    ASSERT_EQ(np.vertices.size(), 2u);
    EXPECT_EQ(np.vertices[0], std::make_pair(0, R(0)));
    EXPECT_EQ(np.vertices[1], std::make_pair(2, R(2)));
    ASSERT_EQ(np.slopes.size(), 1u);
    EXPECT_EQ(np.slopes[0], std::make_pair(R(1), 2));
    EXPECT_TRUE(np.symmetric());
    EXPECT_TRUE(np.vertices_integral());
}

TEST(NewtonPolygon, TrivialPolynomial) {
    const auto np = compute_newton_polygon(L(5, {1}, 1));
    EXPECT_TRUE(np.slopes.empty());
    EXPECT_EQ(np.length(), 0);
}

TEST(NewtonPolygon, SexticExample) {
    const auto np = compute_newton_polygon(kSextic);
    const std::vector<std::pair<int, exact_rational>> v{{0, R(0)}, {2, R(1)}, {4, R(3)}, {6, R(6)}};
    EXPECT_EQ(np.vertices, v);
    ASSERT_EQ(np.slopes.size(), 3u);
    EXPECT_EQ(np.slopes[0], std::make_pair(R(1, 2), 2));
    EXPECT_EQ(np.slopes[1], std::make_pair(R(1), 2));
    EXPECT_EQ(np.slopes[2], std::make_pair(R(3, 2), 2));
    EXPECT_TRUE(np.symmetric());
}

TEST(NewtonPolygon, HullOracleOnRandomPolynomials) {
    // The polygon lies below every point, passes through its vertices, and
    // slopes increase strictly.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t q = (trial % 2) ? 9 : 5;
        l_polynomial P;
        P.q = q;
        const int a = 1 + static_cast<int>(rng() % 8);
        P.coeffs.assign(a + 1, 0);
        P.coeffs[0] = 1;
        for (int i = 1; i <= a; ++i) {
            if (rng() % 4 == 0) continue;
            P.coeffs[i] = ipow(bigint(q), static_cast<unsigned>(rng() % 5)) * static_cast<long long>(1 + rng() % 4);
        }
        if (P.coeffs[a] == 0) P.coeffs[a] = 1;
        const auto np = compute_newton_polygon(P);
        EXPECT_EQ(np.length(), a);
        for (std::size_t s = 1; s < np.slopes.size(); ++s) EXPECT_LT(np.slopes[s - 1].first, np.slopes[s].first);
        auto polygon_at = [&](int i) {
            for (std::size_t s = 1; s < np.vertices.size(); ++s) {
                const auto& [x0, y0] = np.vertices[s - 1];
                const auto& [x1, y1] = np.vertices[s];
                if (i >= x0 && i <= x1) return y0 + (y1 - y0) * R(i - x0, x1 - x0);
            }
            return np.vertices.front().second;
        };
        for (int i = 0; i <= a; ++i)
            if (P.coeffs[i] != 0) EXPECT_LE(polygon_at(i), q_valuation(P.coeffs[i], q));
        for (const auto& [x, y] : np.vertices) EXPECT_EQ(y, q_valuation(P.coeffs[x], q));
    }
}

TEST(Theta, Examples) {
    EXPECT_EQ(theta(L(3, {1, 0, -9}, -1)), 0);
    EXPECT_EQ(theta(L(5, {1}, 1)), 0);
    const auto np = compute_newton_polygon(kSextic);
    const auto t = compute_theta(kSextic, np);
    EXPECT_EQ(t.primitivity, R(1));
    EXPECT_EQ(t.slopes, R(1));
    EXPECT_EQ(t.value, 1);
}

TEST(Theta, OffLatticeVertexIsRejected) {
    // v_9(3) = 1/2 puts a vertex off the lattice.
    EXPECT_THROW(theta(L(9, {1, 3, 81}, 1)), theorem_violation);
}

TEST(Mu, Examples) {
    mu_inputs in;
    in.deg_delta = 24;
    in.deg_n = 6;
    in.a = 2;
    auto r = compute_mu(in);
    EXPECT_EQ(r.mu, 1);
    EXPECT_EQ(r.upper_bound, 1);
    EXPECT_TRUE(r.all_checks_pass());
    EXPECT_EQ(r.kodaira_dim, kodaira_dimension::zero);

    in = {};
    in.deg_delta = 12;
    in.deg_n = 5;
    in.a = 1;
    r = compute_mu(in);
    EXPECT_EQ(r.mu, 0);
    EXPECT_EQ(r.kodaira_dim, kodaira_dimension::minus_infinity);
    EXPECT_TRUE(r.checks.at("mu_eq_b_minus_d"));

    in = {};
    in.constant = true;
    in.dim_tr = 1;
    r = compute_mu(in);
    EXPECT_EQ(r.mu, 0);
    EXPECT_TRUE(r.all_checks_pass());
}

TEST(Mu, HardErrors) {
    mu_inputs in;
    in.deg_delta = 18;
    EXPECT_THROW(compute_mu(in), theorem_violation);
    in.deg_delta = 12;
    in.theta = 1;
    EXPECT_THROW(compute_mu(in), theorem_violation);
}

TEST(Lambda, Examples) {
    auto r = lambda_analytic(L(3, {1, 0, -9}, -1), 0, false);
    EXPECT_EQ(r.value, 1);
    EXPECT_TRUE(r.conditional);
    EXPECT_EQ(lambda_analytic(L(5, {1}, 1), 0, true).value, 0);
    r = lambda_analytic(L(5, {1, -5}, 1), 0, true);
    EXPECT_EQ(r.value, 1);
    EXPECT_FALSE(r.conditional);
    // Content check ties lambda to theta.
    EXPECT_THROW(lambda_analytic(L(3, {1, 0, -9}, -1), 1, true), theorem_violation);
}

TEST(Lambda, BoundedByDegree) {
    const int t = theta(kSextic);
    EXPECT_LE(lambda_analytic(kSextic, t, true).value, kSextic.degree());
}

TEST(FrobeniusTransport, Examples) {
    EXPECT_EQ(frobenius_mu_transport(3, 24, 0, 3, true), 3);
    EXPECT_EQ(frobenius_mu_transport(1, 24, 1, 3, true), 5);
    EXPECT_EQ(frobenius_mu_transport(0, 12, 1, 5, true), 4);
    EXPECT_THROW(frobenius_mu_transport(1, 24, 1, 3, false), input_error);
}

TEST(Growth, Rows) {
    const auto rows = growth_table(1, 1, 1, 3, 1, 4);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].leading, 4);
    EXPECT_EQ(rows[1].leading, 11);
    EXPECT_EQ(rows[2].leading, 30);
    EXPECT_EQ(rows[3].leading, 85);
    for (const auto& r : growth_table(0, 0, 1, 5, 0, 5)) EXPECT_EQ(r.leading, 0);
    EXPECT_EQ(growth_table(1, 3, 2, 7, 2, 2)[0].leading, 98 + 6);
}

TEST(ExpectedFamilies, CeilingFormula) {
    EXPECT_EQ(ulmer_expected_mu(5, 1), 0);
    EXPECT_EQ(ulmer_expected_mu(2, 2), 0);
    EXPECT_EQ(ulmer_expected_mu(3, 2), 1);
    EXPECT_EQ(shioda_expected_mu(3, 1), 0);
    EXPECT_EQ(shioda_expected_mu(3, 3), 2);
    EXPECT_THROW(shioda_expected_mu(5, 1), input_error);
    EXPECT_THROW(shioda_expected_mu(3, 2), input_error);
}

TEST(Analysis, LegendreOverF3) {
    const auto F = field_ctx::prime(3);
    const auto r = analyze(legendre_curve(parse_rational_function(F, "(1+t+t^2)/(1+t)")));
    EXPECT_EQ(r.places.discriminant.degree(), 24);
    EXPECT_EQ(r.a, 2);
    EXPECT_EQ(r.L.poly.format(), "1 - 9*T^2");
    EXPECT_EQ(r.mu().theta, 0);
    EXPECT_EQ(r.mu().mu, 1);
    EXPECT_TRUE(r.mu().all_checks_pass());
    EXPECT_TRUE(r.iwasawa.lambda.conditional);
}

TEST(Analysis, ShiodaCurveAndFrobeniusTwist) {
    const auto F = field_ctx::prime(3);
    const auto m = legendre_curve(parse_rational_function(F, "(t^2+1)^2/t^2"));
    const auto r = analyze(m);
    EXPECT_TRUE(r.places.semistable);
    EXPECT_EQ(r.mu().mu, 1);
    const auto r3 = analyze(frobenius_twist(m, 1));
    EXPECT_EQ(r3.places.discriminant.degree(), 72);
    EXPECT_EQ(r3.L.poly.coeffs, r.L.poly.coeffs);
    EXPECT_EQ(r3.mu().mu, frobenius_mu_transport(r.mu().mu, 24, 1, 3, true));
}

TEST(Analysis, UlmerFamily) {
    for (auto [p, n] : {std::pair{5u, 1}, {3u, 1}, {2u, 2}}) {
        const auto F = field_ctx::prime(p);
        const int d = static_cast<int>(checked_pow(p, n)) + 1;
        const auto m = weierstrass_model::from_strings(F, {"1", "0", "0", "0", "-t^" + std::to_string(d)});
        const auto r = analyze(m);
        EXPECT_EQ(r.places.discriminant.degree() / 12, (d + 5) / 6) << p;
        EXPECT_EQ(r.mu().theta, 0) << p;
        EXPECT_EQ(r.mu().mu, ulmer_expected_mu(p, n)) << p;
        EXPECT_TRUE(r.mu().all_checks_pass()) << p;
    }
}

TEST(Analysis, ShiodaFamilySmallCase) {
    // y^2 = x^3 + x + t^2 over F_3, d = 2.
    const auto F = field_ctx::prime(3);
    const auto r = analyze(weierstrass_model::from_strings(F, {"0", "0", "0", "1", "t^2"}));
    EXPECT_EQ(r.places.discriminant.degree() / 12, 1);
    EXPECT_EQ(r.mu().theta, 0);
    EXPECT_EQ(r.mu().mu, shioda_expected_mu(3, 1));
}

TEST(Analysis, ConstantCurve) {
    const auto F = field_ctx::prime(7);
    const auto r = analyze(weierstrass_model::from_strings(F, {"0", "0", "0", "1", "3"}));
    EXPECT_EQ(r.dim_tr, 1);
    EXPECT_EQ(r.a, 0);
    EXPECT_EQ(r.mu().mu, 0);
    EXPECT_TRUE(r.mu().all_checks_pass());
}
