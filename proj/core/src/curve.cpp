#include "ellmu/curve.hpp"

#include "ellmu/errors.hpp"
#include "ellmu/point_count.hpp"

namespace ellmu {

namespace {

rational_function k(const field_ref& f, std::int64_t c) { return rational_function::from_int(f, c); }

// f = c * w^n for a constant c and some w in K*; returns c.
std::optional<ff_elem> power_class_constant(const rational_function& f, int n) {
    for (const poly* p : {&f.num(), &f.den()})
        if (p->degree() > 0)
            for (const auto& [g, m] : squarefree_decomposition(*p))
                if (m % n != 0) return std::nullopt;
    return f.num().leading();
}

}  // namespace

weierstrass_model::weierstrass_model(rational_function a1, rational_function a2, rational_function a3,
                                     rational_function a4, rational_function a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    for (const auto& c : a_)
        if (!c.field() || !c.field()->same_as(*a_[0].field())) throw input_error("coefficients over different fields");
    if (standard_invariants(*this).discriminant.is_zero()) throw input_error("singular equation: discriminant is zero");
}

weierstrass_model weierstrass_model::from_strings(const field_ref& f, const std::array<std::string, 5>& coeffs,
                                                  const std::string& var) {
    std::array<rational_function, 5> a;
    for (std::size_t i = 0; i < 5; ++i) a[i] = parse_rational_function(f, coeffs[i], var);
    return weierstrass_model(a[0], a[1], a[2], a[3], a[4]);
}

bool weierstrass_model::coefficients_constant() const {
    for (const auto& c : a_)
        if (!c.is_constant()) return false;
    return true;
}

invariants standard_invariants(const weierstrass_model& m) {
    const field_ref& f = m.field();
    const auto& [a1, a2, a3, a4, a6] = m.a();
    invariants r;
    r.b2 = a1 * a1 + k(f, 4) * a2;
    r.b4 = a1 * a3 + k(f, 2) * a4;
    r.b6 = a3 * a3 + k(f, 4) * a6;
    r.b8 = a1 * a1 * a6 + k(f, 4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    r.c4 = r.b2 * r.b2 - k(f, 24) * r.b4;
    r.c6 = -(r.b2 * r.b2 * r.b2) + k(f, 36) * r.b2 * r.b4 - k(f, 216) * r.b6;
    r.discriminant = -(r.b2 * r.b2 * r.b8) - k(f, 8) * r.b4 * r.b4 * r.b4 - k(f, 27) * r.b6 * r.b6 +
                     k(f, 9) * r.b2 * r.b4 * r.b6;
    if (!r.discriminant.is_zero()) r.j = r.c4 * r.c4 * r.c4 / r.discriminant;
    return r;
}

weierstrass_model legendre_curve(const rational_function& f) {
    const field_ref& F = f.field();
    if (F->characteristic() == 2) throw input_error("Legendre form needs odd characteristic");
    if (f.is_zero() || f == k(F, 1)) throw input_error("Legendre parameter 0 or 1 gives a singular curve");
    const rational_function zero(F);
    return weierstrass_model(zero, -(k(F, 1) + f), zero, f, zero);
}

weierstrass_model transform(const weierstrass_model& m, const rational_function& u, const rational_function& r,
                            const rational_function& s, const rational_function& w) {
    if (u.is_zero()) throw input_error("transform with u = 0");
    const field_ref& f = m.field();
    const auto& [a1, a2, a3, a4, a6] = m.a();
    const rational_function two = k(f, 2), three = k(f, 3);
    const rational_function n1 = a1 + two * s;
    const rational_function n2 = a2 - s * a1 + three * r - s * s;
    const rational_function n3 = a3 + r * a1 + two * w;
    const rational_function n4 = a4 - s * a3 + two * r * a2 - (w + r * s) * a1 + three * r * r - two * s * w;
    const rational_function n6 = a6 + r * a4 + r * r * a2 + r * r * r - w * a3 - w * w - r * w * a1;
    const rational_function ui = u.inverse();
    return weierstrass_model(n1 * ui, n2 * ui.pow(2), n3 * ui.pow(3), n4 * ui.pow(4), n6 * ui.pow(6));
}

weierstrass_model quadratic_twist(const weierstrass_model& m, const rational_function& D) {
    const field_ref& f = m.field();
    if (f->characteristic() == 2) throw input_error("quadratic twist needs odd characteristic");
    if (D.is_zero()) throw input_error("twist by zero");
    const invariants inv = standard_invariants(m);
    const rational_function zero(f);
    const rational_function quarter = k(f, 4).inverse(), half = k(f, 2).inverse();
    return weierstrass_model(zero, D * inv.b2 * quarter, zero, D * D * inv.b4 * half, D * D * D * inv.b6 * quarter);
}

weierstrass_model frobenius_twist(const weierstrass_model& m, std::uint32_t mexp) {
    if (mexp == 0) return m;
    const auto& a = m.a();
    return weierstrass_model(a[0].frobenius_power(mexp), a[1].frobenius_power(mexp), a[2].frobenius_power(mexp),
                             a[3].frobenius_power(mexp), a[4].frobenius_power(mexp));
}

bool j_is_pth_power(const weierstrass_model& m) { return standard_invariants(m).j.derivative().is_zero(); }

constancy detect_constancy(const weierstrass_model& m) {
    const field_ref& f = m.field();
    const field_ctx& F = *f;
    const invariants inv = standard_invariants(m);
    constancy out;
    if (!inv.j.is_constant()) {
        out.kind = constancy_kind::non_constant;
        out.reason = "j is not constant";
        return out;
    }
    auto finish = [&](std::array<ff_elem, 5> a0, std::string why) {
        out.kind = constancy_kind::constant;
        out.constant_model = a0;
        out.trace = count_points(F, a0).trace;
        out.reason = std::move(why);
        return out;
    };
    if (m.coefficients_constant()) {
        std::array<ff_elem, 5> a0;
        for (std::size_t i = 0; i < 5; ++i) a0[i] = m.a()[i].num().coeff(0);
        return finish(a0, "coefficients lie in the constant field");
    }
    if (F.characteristic() <= 3) {
        out.kind = constancy_kind::undetermined;
        out.reason = "constant j in characteristic 2 or 3";
        return out;
    }
    const ff_elem j = *inv.j.constant_value();
    ff_elem c40{0}, c60{0};
    if (inv.c4.is_zero()) {
        auto c = power_class_constant(inv.c6, 6);
        if (!c) {
            out.kind = constancy_kind::non_constant;
            out.reason = "c6 is not a constant times a sixth power";
            return out;
        }
        c60 = *c;
    } else if (inv.c6.is_zero()) {
        auto c = power_class_constant(inv.c4, 4);
        if (!c) {
            out.kind = constancy_kind::non_constant;
            out.reason = "c4 is not a constant times a fourth power";
            return out;
        }
        c40 = *c;
    } else {
        auto c = power_class_constant(inv.c6 / inv.c4, 2);
        if (!c) {
            out.kind = constancy_kind::non_constant;
            out.reason = "c6/c4 is not a constant times a square";
            return out;
        }
        const ff_elem j1728 = F.sub(j, F.from_int(1728));
        c40 = F.div(F.mul(F.sqr(*c), j), j1728);
        c60 = F.mul(*c, c40);
    }
    // y^2 = x^3 - 27 c4 x - 54 c6
    return finish({F.zero(), F.zero(), F.zero(), F.scale(c40, -27), F.scale(c60, -54)},
                  "invariants are a constant model times a power class");
}

curve_meta describe_curve(const weierstrass_model& m, std::optional<rational_function> legendre) {
    curve_meta meta;
    meta.j = standard_invariants(m).j;
    meta.is_isotrivial = meta.j.is_constant();
    meta.j_is_pth_power = meta.j.derivative().is_zero();
    meta.constancy_class = detect_constancy(m);
    meta.legendre_parameter = std::move(legendre);
    return meta;
}

std::string to_string(constancy_kind k) {
    switch (k) {
        case constancy_kind::constant: return "constant";
        case constancy_kind::non_constant: return "non_constant";
        case constancy_kind::undetermined: return "undetermined";
    }
    return "undetermined";
}

}  // namespace ellmu
