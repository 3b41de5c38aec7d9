#include <gtest/gtest.h>

#include <random>

#include "ellmu/errors.hpp"
#include "ellmu/poly.hpp"

using namespace ellmu;

namespace {

bool brute_irreducible(const poly& f) {
    // No monic factor of degree 1..deg/2.
    const auto& F = f.field();
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        const std::uint64_t total = checked_pow(F->size(), d);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::vector<ff_elem> c(d + 1);
            std::uint64_t v = idx;
            for (int i = 0; i < d; ++i) {
                c[i] = ff_elem{v % F->size()};
                v /= F->size();
            }
            c[d] = F->one();
            if ((f % poly(F, c)).is_zero()) return false;
        }
    }
    return f.degree() >= 1;
}

poly random_poly(const field_ref& F, int deg, std::mt19937_64& rng) {
    std::vector<ff_elem> c(deg + 1);
    for (auto& x : c) x = F->random(rng);
    c[deg] = F->one();
    return poly(F, c);
}

}  // namespace

TEST(Poly, ArithmeticAndDegree) {
    auto F = field_ctx::prime(5);
    poly a = poly::from_ints(F, {1, 2, 3});
    poly b = poly::from_ints(F, {4, 0, 1});
    EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
    auto [q, r] = divmod(a * b + poly::from_ints(F, {1}), b);
    EXPECT_EQ(q, a);
    EXPECT_EQ(r, poly::from_ints(F, {1}));
    EXPECT_TRUE(gcd(a * b, b * b).is_monic());
    EXPECT_EQ(gcd(a * b, b * b), b.monic());
}

TEST(Poly, NecklaceCountsMatchBruteForce) {
    for (auto [p, d, expect] : {std::tuple{3u, 1u, 3u}, {3u, 2u, 3u}, {5u, 2u, 10u}, {2u, 4u, 3u}, {3u, 3u, 8u}}) {
        auto F = field_ctx::prime(p);
        auto list = enumerate_monic_irreducibles(F, d);
        EXPECT_EQ(list.size(), expect);
        EXPECT_EQ(count_monic_irreducibles(p, d), expect);
        for (const auto& f : list) EXPECT_TRUE(brute_irreducible(f));
    }
    auto F9 = field_ctx::canonical(3, 2);
    EXPECT_EQ(enumerate_monic_irreducibles(F9, 2).size(), count_monic_irreducibles(9, 2));
}

TEST(Poly, IrreducibilityAgreesWithBruteForce) {
    std::mt19937_64 rng(1);
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {3u, 2u}}) {
        auto F = field_ctx::canonical(p, n);
        for (int i = 0; i < 60; ++i) {
            poly f = random_poly(F, 2 + i % 4, rng);
            EXPECT_EQ(is_irreducible(f), brute_irreducible(f)) << f.format();
        }
    }
}

TEST(Poly, FactorRecomposes) {
    std::mt19937_64 rng(2);
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 3u}, {3u, 2u}, {5u, 1u}, {7u, 1u}}) {
        auto F = field_ctx::canonical(p, n);
        for (int i = 0; i < 25; ++i) {
            poly f = random_poly(F, 1 + i % 5, rng) * random_poly(F, 1 + i % 3, rng);
            if (i % 4 == 0) f = f * f;
            if (i % 7 == 0) f = f.pow(p);
            poly prod = poly::constant(F, F->one());
            for (const auto& [g, m] : factor(f)) {
                EXPECT_TRUE(is_irreducible(g));
                EXPECT_TRUE(g.is_monic());
                prod = prod * g.pow(m);
            }
            EXPECT_EQ(prod, f.monic()) << f.format();
        }
    }
}

TEST(Poly, FactorSpecificCases) {
    auto F3 = field_ctx::prime(3);
    // 1+t+t^2 = (t+2)^2 over F_3
    auto fac = factor(poly::from_ints(F3, {1, 1, 1}));
    ASSERT_EQ(fac.size(), 1u);
    EXPECT_EQ(fac[0].first, poly::from_ints(F3, {2, 1}));
    EXPECT_EQ(fac[0].second, 2);
    auto F7 = field_ctx::prime(7);
    // x^3+5x = x(x-3)(x+3) over F_7
    EXPECT_EQ(factor(poly::from_ints(F7, {0, 5, 0, 1})).size(), 3u);
}

TEST(Poly, RootsSmallAndLargeFields) {
    auto F = field_ctx::prime(7);
    poly f = poly::from_ints(F, {-1, 0, 1}) * poly::from_ints(F, {3, 1});
    EXPECT_EQ(roots(f), (std::vector<ff_elem>{ff_elem{1}, ff_elem{4}, ff_elem{6}}));

    auto L = field_ctx::prime(1000003);
    poly g = poly::from_ints(L, {-5, 1}) * poly::from_ints(L, {-17, 1}) * poly::from_ints(L, {1, 0, 1});
    auto r = roots(g);
    // -1 is a nonsquare mod 1000003 (= 3 mod 4)
    EXPECT_EQ(r, (std::vector<ff_elem>{ff_elem{5}, ff_elem{17}}));

    auto B = field_ctx::canonical(2, 18);
    std::mt19937_64 rng(9);
    const ff_elem a = B->random(rng), b = B->random(rng);
    poly h = poly(B, {a, B->one()}) * poly(B, {b, B->one()}) * poly(B, {B->one(), B->one(), B->one()});
    auto rr = roots(h);
    for (auto x : rr) EXPECT_EQ(h.eval(x), B->zero());
    EXPECT_GE(rr.size(), 1u);
}

TEST(Poly, SquarefreeDecompositionInCharP) {
    auto F = field_ctx::prime(3);
    poly x1 = poly::from_ints(F, {1, 1});
    poly x2 = poly::from_ints(F, {2, 0, 1, 1});
    poly f = x1.pow(4) * x2.pow(3);
    auto parts = squarefree_decomposition(f);
    poly prod = poly::constant(F, F->one());
    for (const auto& [g, m] : parts) prod = prod * g.pow(m);
    EXPECT_EQ(prod, f);
}

TEST(Poly, MultiplicityAndReverse) {
    auto F = field_ctx::prime(5);
    poly t = poly::variable(F);
    poly f = t.pow(3) * poly::from_ints(F, {1, 1});
    EXPECT_EQ(f.multiplicity(t), 3);
    EXPECT_EQ(f.reversed(5), poly::from_ints(F, {0, 1, 1}));
    EXPECT_EQ(poly::from_ints(F, {1, 2, 1}).format(), "t^2+2*t+1");
}
