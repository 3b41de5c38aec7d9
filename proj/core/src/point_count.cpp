#include "ellmu/point_count.hpp"

#include "ellmu/errors.hpp"

namespace ellmu {

ff_elem discriminant(const field_ctx& F, const std::array<ff_elem, 5>& a) {
    const auto [a1, a2, a3, a4, a6] = a;
    auto add = [&](ff_elem x, ff_elem y) { return F.add(x, y); };
    auto mul = [&](ff_elem x, ff_elem y) { return F.mul(x, y); };
    auto sc = [&](ff_elem x, std::int64_t c) { return F.scale(x, c); };
    const ff_elem b2 = add(mul(a1, a1), sc(a2, 4));
    const ff_elem b4 = add(mul(a1, a3), sc(a4, 2));
    const ff_elem b6 = add(mul(a3, a3), sc(a6, 4));
    const ff_elem b8 = F.sub(add(add(mul(mul(a1, a1), a6), sc(mul(a2, a6), 4)), mul(a2, mul(a3, a3))),
                             add(mul(a1, mul(a3, a4)), mul(a4, a4)));
    ff_elem d = F.neg(mul(mul(b2, b2), b8));
    d = F.sub(d, sc(mul(b4, mul(b4, b4)), 8));
    d = F.sub(d, sc(mul(b6, b6), 27));
    d = add(d, sc(mul(b2, mul(b4, b6)), 9));
    return d;
}

fiber_count count_points(const field_ctx& F, const std::array<ff_elem, 5>& a) {
    if (discriminant(F, a).v == 0) throw input_error("singular Weierstrass equation over " + F.describe());
    F.tables();
    const auto [a1, a2, a3, a4, a6] = a;
    const std::uint64_t q = F.size();
    std::int64_t affine = 0;
    if (F.characteristic() != 2) {
        // (2y + a1x + a3)^2 = 4x^3 + b2x^2 + 2b4x + b6
        const ff_elem b2 = F.add(F.mul(a1, a1), F.scale(a2, 4));
        const ff_elem b4x2 = F.scale(F.add(F.mul(a1, a3), F.scale(a4, 2)), 2);
        const ff_elem b6 = F.add(F.mul(a3, a3), F.scale(a6, 4));
        const ff_elem four = F.from_int(4);
        std::int64_t chi_sum = 0;
        for (std::uint64_t v = 0; v < q; ++v) {
            const ff_elem x{v};
            ff_elem r = F.add(F.mul(four, x), b2);
            r = F.add(F.mul(r, x), b4x2);
            r = F.add(F.mul(r, x), b6);
            chi_sum += F.quadratic_character(r);
        }
        affine = static_cast<std::int64_t>(q) + chi_sum;
    } else {
        for (std::uint64_t v = 0; v < q; ++v) {
            const ff_elem x{v};
            const ff_elem A = F.add(F.mul(a1, x), a3);
            ff_elem R = F.add(x, a2);
            R = F.add(F.mul(R, x), a4);
            R = F.add(F.mul(R, x), a6);
            if (A.v == 0) {
                affine += 1;
                continue;
            }
            const ff_elem z = F.div(R, F.sqr(A));
            if (F.absolute_trace(z) == 0) affine += 2;
        }
    }
    fiber_count out;
    out.field_size = q;
    out.count = static_cast<std::uint64_t>(affine) + 1;
    out.trace = static_cast<std::int64_t>(q) + 1 - static_cast<std::int64_t>(out.count);
    return out;
}

fiber_count count_points_naive(const field_ctx& F, const std::array<ff_elem, 5>& a) {
    if (discriminant(F, a).v == 0) throw input_error("singular Weierstrass equation over " + F.describe());
    const auto [a1, a2, a3, a4, a6] = a;
    const std::uint64_t q = F.size();
    std::uint64_t affine = 0;
    for (std::uint64_t xv = 0; xv < q; ++xv) {
        const ff_elem x{xv};
        ff_elem rhs = F.add(x, a2);
        rhs = F.add(F.mul(rhs, x), a4);
        rhs = F.add(F.mul(rhs, x), a6);
        for (std::uint64_t yv = 0; yv < q; ++yv) {
            const ff_elem y{yv};
            const ff_elem lhs = F.add(F.mul(y, y), F.mul(y, F.add(F.mul(a1, x), a3)));
            if (lhs == rhs) ++affine;
        }
    }
    fiber_count out;
    out.field_size = q;
    out.count = affine + 1;
    out.trace = static_cast<std::int64_t>(q) + 1 - static_cast<std::int64_t>(out.count);
    return out;
}

}  // namespace ellmu
