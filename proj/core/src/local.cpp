#include "ellmu/local.hpp"

#include <algorithm>

#include "ellmu/errors.hpp"

namespace ellmu {

std::string kodaira_type::str() const {
    switch (symbol) {
        case kodaira_symbol::I0: return "I0";
        case kodaira_symbol::In: return "I" + std::to_string(n);
        case kodaira_symbol::II: return "II";
        case kodaira_symbol::III: return "III";
        case kodaira_symbol::IV: return "IV";
        case kodaira_symbol::I0s: return "I0*";
        case kodaira_symbol::Ins: return "I" + std::to_string(n) + "*";
        case kodaira_symbol::IVs: return "IV*";
        case kodaira_symbol::IIIs: return "III*";
        case kodaira_symbol::IIs: return "II*";
    }
    return "?";
}

int kodaira_type::components() const {
    switch (symbol) {
        case kodaira_symbol::I0: return 1;
        case kodaira_symbol::In: return n;
        case kodaira_symbol::II: return 1;
        case kodaira_symbol::III: return 2;
        case kodaira_symbol::IV: return 3;
        case kodaira_symbol::I0s: return 5;
        case kodaira_symbol::Ins: return 5 + n;
        case kodaira_symbol::IVs: return 7;
        case kodaira_symbol::IIIs: return 8;
        case kodaira_symbol::IIs: return 9;
    }
    return 1;
}

std::string to_string(reduction_kind r) {
    switch (r) {
        case reduction_kind::good: return "good";
        case reduction_kind::split_multiplicative: return "split_multiplicative";
        case reduction_kind::nonsplit_multiplicative: return "nonsplit_multiplicative";
        case reduction_kind::additive: return "additive";
    }
    return "?";
}

namespace {

class tate_machine {
public:
    explicit tate_machine(std::array<laurent_series, 5> a) : a_(std::move(a)), R_(a_[0].field()), K_(*R_) {
        p_ = K_.characteristic();
    }

    tate_result run(bool count_good);

private:
    // Constants are carried at the largest working precision so they never limit a result.
    int cap() const {
        int c = 0;
        for (const auto& x : a_) c = std::max(c, x.precision() - std::min(x.valuation_bound(), 0));
        return c + 1;
    }
    laurent_series num(std::int64_t c) const { return laurent_series::constant(R_, K_.from_int(c), cap()); }
    laurent_series lift(ff_elem c, int k = 0) const { return laurent_series::monomial(R_, c, k, cap()); }

    laurent_series& a1() { return a_[0]; }
    laurent_series& a2() { return a_[1]; }
    laurent_series& a3() { return a_[2]; }
    laurent_series& a4() { return a_[3]; }
    laurent_series& a6() { return a_[4]; }

    laurent_series b2() const { return a_[0] * a_[0] + num(4) * a_[1]; }
    laurent_series b4() const { return a_[0] * a_[2] + num(2) * a_[3]; }
    laurent_series b6() const { return a_[2] * a_[2] + num(4) * a_[4]; }
    laurent_series b8() const {
        return a_[0] * a_[0] * a_[4] + num(4) * a_[1] * a_[4] - a_[0] * a_[2] * a_[3] + a_[1] * a_[2] * a_[2] -
               a_[3] * a_[3];
    }
    laurent_series c4() const {
        const auto x = b2();
        return x * x - num(24) * b4();
    }
    laurent_series c6() const {
        const auto x = b2();
        return -(x * x * x) + num(36) * x * b4() - num(216) * b6();
    }
    laurent_series disc() const {
        const auto x2 = b2(), x4 = b4(), x6 = b6(), x8 = b8();
        return -(x2 * x2 * x8) - num(8) * x4 * x4 * x4 - num(27) * x6 * x6 + num(9) * x2 * x4 * x6;
    }

    // v(x) < k, deciding from known coefficients.
    static bool val_lt(const laurent_series& x, int k) {
        if (!x.is_zero()) return x.valuation() < k;
        if (x.precision() >= k) return false;
        throw precision_exhausted("valuation test beyond precision");
    }
    static bool pdiv(const laurent_series& x) { return !val_lt(x, 1); }
    // Residue of x / u^k.
    static ff_elem red(const laurent_series& x, int k = 0) { return x.coeff(k); }

    ff_elem sqrt_res(ff_elem x) const {
        auto r = K_.sqrt(x);
        if (!r) throw theorem_violation("expected a square root in the residue field");
        return *r;
    }
    ff_elem cbrt_res(ff_elem x) const {
        if (p_ != 3) throw theorem_violation("cube root requested outside characteristic 3");
        return K_.pth_root(x);
    }
    ff_elem half() const { return K_.inv(K_.from_int(2)); }

    bool quad_has_root(ff_elem a, ff_elem b, ff_elem c) const {
        if (a.v == 0) return b.v != 0 || c.v == 0;
        if (p_ != 2) return K_.is_square(K_.sub(K_.sqr(b), K_.scale(K_.mul(a, c), 4)));
        return !roots(poly(R_, {c, b, a})).empty();
    }
    int cubic_roots(ff_elem b, ff_elem c, ff_elem d) const {
        return static_cast<int>(roots(poly(R_, {d, c, b, K_.one()})).size());
    }

    void rst(const laurent_series& r, const laurent_series& s, const laurent_series& t) {
        const laurent_series A1 = a_[0], A2 = a_[1], A3 = a_[2], A4 = a_[3], A6 = a_[4];
        a_[0] = A1 + num(2) * s;
        a_[1] = A2 - s * A1 + num(3) * r - s * s;
        a_[2] = A3 + r * A1 + num(2) * t;
        a_[3] = A4 - s * A3 + num(2) * r * A2 - (t + r * s) * A1 + num(3) * r * r - num(2) * s * t;
        a_[4] = A6 + r * A4 + r * r * A2 + r * r * r - t * A3 - t * t - r * t * A1;
    }

    tate_result finish(kodaira_type k, int vdisc, reduction_kind red_kind, int tamagawa, bool count_good);

    std::array<laurent_series, 5> a_;
    field_ref R_;
    const field_ctx& K_;
    std::uint32_t p_ = 0;
};

tate_result tate_machine::finish(kodaira_type k, int vdisc, reduction_kind red_kind, int tamagawa, bool count_good) {
    tate_result out;
    local_data& d = out.data;
    d.kodaira = k;
    d.delta = vdisc;
    d.components = k.components();
    d.reduction = red_kind;
    d.tamagawa = tamagawa;
    d.residue_field = R_;
    d.residue_size = K_.size();
    d.conductor = red_kind == reduction_kind::good ? 0 : vdisc + 1 - d.components;
    for (std::size_t i = 0; i < 5; ++i) d.reduced_model[i] = a_[i].coeff(0);
    if (d.multiplicative()) check_theorem(d.conductor == 1, "multiplicative place with conductor exponent != 1");
    if (red_kind == reduction_kind::additive) check_theorem(d.conductor >= 2, "additive place with conductor exponent < 2");
    if (red_kind == reduction_kind::good) {
        d.euler_factor = {1};
        if (count_good) {
            const fiber_count fc = count_points(K_, d.reduced_model);
            d.a_v = fc.trace;
            d.supersingular = fc.trace % static_cast<std::int64_t>(p_) == 0;
            d.euler_factor = {1, -fc.trace, bigint(fc.field_size)};
            const bigint a2 = bigint(fc.trace) * fc.trace;
            check_theorem(a2 <= 4 * bigint(fc.field_size), "Hasse bound violated at a good place");
        }
    } else if (red_kind == reduction_kind::split_multiplicative) {
        d.euler_factor = {1, -1};
    } else if (red_kind == reduction_kind::nonsplit_multiplicative) {
        d.euler_factor = {1, 1};
    } else {
        d.euler_factor = {1};
    }
    out.minimal_model = a_;
    return out;
}

tate_result tate_machine::run(bool count_good) {
    for (const auto& x : a_)
        if (val_lt(x, 0)) throw input_error("tate_series expects integral coefficients");
    int vdisc = disc().valuation();
    while (true) {
        if (vdisc == 0) return finish({kodaira_symbol::I0, 0}, 0, reduction_kind::good, 1, count_good);

        // Move the singular point of the reduction to (0, 0).
        ff_elem r{0}, t{0};
        if (p_ == 2) {
            if (pdiv(b2())) {
                r = sqrt_res(red(a4()));
                const ff_elem v = K_.add(
                    K_.mul(K_.add(K_.mul(K_.add(r, red(a2())), r), red(a4())), r), red(a6()));
                t = sqrt_res(v);
            } else {
                const ff_elem inv = K_.inv(red(a1()));
                r = K_.mul(inv, red(a3()));
                t = K_.mul(inv, K_.add(red(a4()), K_.sqr(r)));
            }
        } else if (p_ == 3) {
            const laurent_series B2 = b2();
            if (pdiv(B2))
                r = cbrt_res(K_.neg(red(b6())));
            else
                r = K_.neg(K_.div(red(b4()), red(B2)));
            t = K_.add(K_.mul(red(a1()), r), red(a3()));
        } else {
            const laurent_series C4 = c4();
            if (pdiv(C4)) {
                r = K_.neg(K_.div(red(b2()), K_.from_int(12)));
            } else {
                const ff_elem c4r = red(C4);
                r = K_.neg(K_.div(K_.add(red(c6()), K_.mul(red(b2()), c4r)), K_.mul(K_.from_int(12), c4r)));
            }
            t = K_.neg(K_.mul(half(), K_.add(K_.mul(red(a1()), r), red(a3()))));
        }
        rst(lift(r), num(0), lift(t));

        const laurent_series B2 = b2();
        if (!pdiv(B2)) {
            const bool split = quad_has_root(K_.one(), red(a1()), K_.neg(red(a2())));
            const int cp = split ? vdisc : (vdisc % 2 == 0 ? 2 : 1);
            return finish({kodaira_symbol::In, vdisc}, vdisc,
                          split ? reduction_kind::split_multiplicative : reduction_kind::nonsplit_multiplicative, cp,
                          count_good);
        }
        if (val_lt(a6(), 2)) return finish({kodaira_symbol::II, 0}, vdisc, reduction_kind::additive, 1, count_good);
        if (val_lt(b8(), 3)) return finish({kodaira_symbol::III, 0}, vdisc, reduction_kind::additive, 2, count_good);
        if (val_lt(b6(), 3)) {
            const int cp = quad_has_root(K_.one(), red(a3(), 1), K_.neg(red(a6(), 2))) ? 3 : 1;
            return finish({kodaira_symbol::IV, 0}, vdisc, reduction_kind::additive, cp, count_good);
        }

        // Arrange u | a1, a2; u^2 | a3, a4; u^3 | a6.
        if (p_ == 2) {
            const laurent_series s = lift(sqrt_res(red(a2())));
            const laurent_series tt = lift(sqrt_res(red(a6(), 2)), 1);
            rst(num(0), s, tt);
        } else if (p_ == 3) {
            const laurent_series s = a1(), tt = a3();
            rst(num(0), s, tt);
        } else {
            const laurent_series h = lift(K_.neg(half()));
            const laurent_series s = h * a1(), tt = h * a3();
            rst(num(0), s, tt);
        }

        const ff_elem b = red(a2(), 1), c = red(a4(), 2), d = red(a6(), 3);
        const ff_elem bb = K_.sqr(b), cc = K_.sqr(c), bc = K_.mul(b, c);
        ff_elem w = K_.scale(K_.sqr(d), 27);
        w = K_.sub(w, K_.mul(bb, cc));
        w = K_.add(w, K_.scale(K_.mul(K_.mul(b, bb), d), 4));
        w = K_.sub(w, K_.scale(K_.mul(bc, d), 18));
        w = K_.add(w, K_.scale(K_.mul(c, cc), 4));
        const ff_elem x = K_.sub(K_.scale(c, 3), bb);
        const int sw = w.v != 0 ? 1 : (x.v != 0 ? 2 : 3);

        if (sw == 1) {
            const int cp = 1 + cubic_roots(b, c, d);
            return finish({kodaira_symbol::I0s, 0}, vdisc, reduction_kind::additive, cp, count_good);
        }
        if (sw == 2) {
            ff_elem r2{0};
            if (p_ == 2)
                r2 = sqrt_res(c);
            else if (p_ == 3)
                r2 = K_.div(c, b);
            else
                r2 = K_.div(K_.sub(bc, K_.scale(d, 9)), K_.scale(x, 2));
            rst(lift(r2, 1), num(0), num(0));
            int ix = 3, iy = 3;
            int cp = 0;
            while (true) {
                // a2t = a2/u, a3t = a3/u^(iy-1), a4t = a4/u^ix, a6t = a6/u^(ix+iy-2)
                ff_elem a3t = red(a3(), iy - 1), a6t = red(a6(), ix + iy - 2);
                if (K_.add(K_.sqr(a3t), K_.scale(a6t, 4)).v == 0) {
                    const ff_elem tv = p_ == 2 ? sqrt_res(a6t) : K_.neg(K_.mul(a3t, half()));
                    rst(num(0), num(0), lift(tv, iy - 1));
                    ++iy;
                    const ff_elem a2t = red(a2(), 1), a4t = red(a4(), ix);
                    a6t = red(a6(), ix + iy - 2);
                    if (K_.sub(K_.sqr(a4t), K_.scale(K_.mul(a6t, a2t), 4)).v == 0) {
                        const ff_elem rv = p_ == 2 ? sqrt_res(K_.div(a6t, a2t))
                                                   : K_.neg(K_.div(a4t, K_.scale(a2t, 2)));
                        rst(lift(rv, ix - 1), num(0), num(0));
                        ++ix;
                    } else {
                        cp = quad_has_root(a2t, a4t, a6t) ? 4 : 2;
                        break;
                    }
                } else {
                    cp = quad_has_root(K_.one(), a3t, K_.neg(a6t)) ? 4 : 2;
                    break;
                }
            }
            return finish({kodaira_symbol::Ins, ix + iy - 5}, vdisc, reduction_kind::additive, cp, count_good);
        }

        // Triple root.
        ff_elem r3{0};
        if (p_ == 2)
            r3 = b;
        else if (p_ == 3)
            r3 = cbrt_res(K_.neg(d));
        else
            r3 = K_.neg(K_.div(b, K_.from_int(3)));
        rst(lift(r3, 1), num(0), num(0));
        const ff_elem a3t = red(a3(), 2), a6t = red(a6(), 4);
        if (K_.add(K_.sqr(a3t), K_.scale(a6t, 4)).v != 0) {
            const int cp = quad_has_root(K_.one(), a3t, K_.neg(a6t)) ? 3 : 1;
            return finish({kodaira_symbol::IVs, 0}, vdisc, reduction_kind::additive, cp, count_good);
        }
        const ff_elem tv = p_ == 2 ? K_.neg(sqrt_res(a6t)) : K_.neg(K_.mul(a3t, half()));
        rst(num(0), num(0), lift(tv, 2));
        if (val_lt(a4(), 4)) return finish({kodaira_symbol::IIIs, 0}, vdisc, reduction_kind::additive, 2, count_good);
        if (val_lt(a6(), 6)) return finish({kodaira_symbol::IIs, 0}, vdisc, reduction_kind::additive, 1, count_good);

        // Non-minimal: divide by the uniformizer.
        static constexpr int w_[5] = {1, 2, 3, 4, 6};
        for (std::size_t i = 0; i < 5; ++i) a_[i] = a_[i].shift(-w_[i]);
        vdisc -= 12;
    }
}

}  // namespace

tate_result tate_series(std::array<laurent_series, 5> a, bool count_good) {
    return tate_machine(std::move(a)).run(count_good);
}

tate_result tate_full(const weierstrass_model& m, const local_context& ctx, int precision_cap) {
    static constexpr int w[5] = {1, 2, 3, 4, 6};
    const auto& coeffs = m.a();
    int scale = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        if (coeffs[i].is_zero()) continue;
        const int v = ctx.valuation(coeffs[i]);
        if (v < 0) scale = std::max(scale, (-v + w[i] - 1) / w[i]);
    }
    const int vdisc = ctx.valuation(standard_invariants(m).discriminant) + 12 * scale;
    int precision = vdisc + 24;
    while (true) {
        try {
            std::array<laurent_series, 5> a;
            for (std::size_t i = 0; i < 5; ++i)
                a[i] = ctx.expand(coeffs[i], precision - w[i] * scale).shift(w[i] * scale);
            tate_result r = tate_series(std::move(a));
            r.data.v = ctx.at();
            r.data.residue_degree = ctx.residue_degree();
            r.data.ramification = ctx.ramification();
            check_theorem(r.data.delta <= vdisc && (vdisc - r.data.delta) % 12 == 0,
                          "minimal discriminant valuation inconsistent with the input model");
            return r;
        } catch (const precision_exhausted&) {
            if (precision >= precision_cap) throw;
            precision = std::min(2 * precision, precision_cap);
        }
    }
}

local_data tate(const weierstrass_model& m, const local_context& ctx, int precision_cap) {
    return tate_full(m, ctx, precision_cap).data;
}

local_data tate(const weierstrass_model& m, const place& v, int precision_cap) {
    return tate(m, local_context(v), precision_cap);
}

bool is_supersingular(const local_data& ld) {
    if (ld.reduction != reduction_kind::good || !ld.a_v) throw input_error("supersingularity needs a good place with a trace");
    return *ld.supersingular;
}

bigint local_trace(const local_data& ld, int m) {
    switch (ld.reduction) {
        case reduction_kind::good: {
            if (!ld.a_v) throw input_error("good place without a trace");
            const bigint a = *ld.a_v, q = bigint(ld.residue_size);
            bigint s_prev = 2, s = a;  // s_k = alpha^k + beta^k
            if (m == 0) return s_prev;
            for (int k = 2; k <= m; ++k) {
                bigint next = a * s - q * s_prev;
                s_prev = s;
                s = next;
            }
            return s;
        }
        case reduction_kind::split_multiplicative: return 1;
        case reduction_kind::nonsplit_multiplicative: return (m % 2 == 0) ? 1 : -1;
        case reduction_kind::additive: return 0;
    }
    return 0;
}

}  // namespace ellmu
