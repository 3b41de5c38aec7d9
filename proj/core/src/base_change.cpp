#include "ellmu/base_change.hpp"

#include <algorithm>
#include <set>

#include "ellmu/errors.hpp"

namespace ellmu {

std::string to_string(place_behavior b) {
    switch (b) {
        case place_behavior::split: return "split";
        case place_behavior::inert: return "inert";
        case place_behavior::ramified: return "ramified";
    }
    return "?";
}

bool quad_ext::is_ramified(const place& v) const { return std::find(ramified.begin(), ramified.end(), v) != ramified.end(); }

poly quad_ext::ramified_parameter(const place& v) const {
    if (!is_ramified(v)) throw input_error("place " + v.format() + " is not ramified");
    if (!v.is_infinite()) return d0;
    // D0(1/s) s^(deg + 1) = s rev(D0)(s)
    return poly::variable(d0.field()) * d0.reversed(static_cast<std::size_t>(d0.degree()));
}

quad_ext make_quad_ext(const rational_function& D) {
    const field_ref& f = D.field();
    if (f->characteristic() == 2) throw input_error("quadratic extensions need odd characteristic");
    if (D.is_zero()) throw input_error("zero is not a valid extension element");
    quad_ext ext;
    ext.D = D;
    const poly nd = D.num() * D.den();
    poly d0 = poly::constant(f, nd.leading());
    for (const auto& [pi, e] : factor(nd)) {
        if (e % 2 == 1) {
            d0 = d0 * pi;
            ext.ramified.emplace_back(pi);
        }
    }
    if (d0.degree() <= 0) throw input_error("D is a constant times a square; K(sqrt(D)) is not a geometric extension");
    if (d0.degree() % 2 == 1) ext.ramified.push_back(place::infinity(f));
    ext.d0 = d0;
    int total = 0;
    for (const auto& v : ext.ramified) total += v.degree();
    check_theorem(total % 2 == 0, "odd total degree of ramification");
    ext.genus = total / 2 - 1;
    return ext;
}

place_behavior splitting(const quad_ext& ext, const place& v) {
    if (ext.is_ramified(v)) return place_behavior::ramified;
    const field_ref& f = ext.d0.field();
    const rational_function D0(ext.d0);
    const int k = valuation(D0, v);
    const rational_function u = v.is_infinite() ? rational_function::variable(f).inverse() : rational_function(v.polynomial());
    const local_context ctx(v);
    const ff_elem r = ctx.reduce(D0 * u.pow(-k));
    return ctx.residue_field()->is_square(r) ? place_behavior::split : place_behavior::inert;
}

place_above local_data_above(const weierstrass_model& m, const quad_ext& ext, const place& v, int precision_cap) {
    place_above pa;
    pa.base = v;
    pa.behavior = splitting(ext, v);
    switch (pa.behavior) {
        case place_behavior::split: {
            const local_data ld = tate(m, local_context(v), precision_cap);
            pa.above = {ld, ld};
            break;
        }
        case place_behavior::inert:
            pa.above = {tate(m, local_context(v, 2), precision_cap)};
            break;
        case place_behavior::ramified:
            pa.above = {tate(m, local_context(v, 1, ext.ramified_parameter(v), 2), precision_cap)};
            break;
    }
    int ef = 0;
    for (const auto& ld : pa.above) ef += ld.ramification * ld.residue_degree;
    check_theorem(ef == 2 * v.degree(), "sum of e f above " + v.format() + " is not 2");
    return pa;
}

base_change_summary aggregate(const quad_ext& ext, const weierstrass_model& m, int dim_tr, int precision_cap) {
    base_change_summary s;
    s.ext = ext;
    s.genus = ext.genus;
    s.dim_tr = dim_tr;
    std::set<place> todo(ext.ramified.begin(), ext.ramified.end());
    for (const auto& ld : survey_places(m, precision_cap).special) todo.insert(ld.v);
    for (const auto& v : todo) {
        place_above pa = local_data_above(m, ext, v, precision_cap);
        for (const auto& ld : pa.above) {
            s.deg_delta += ld.delta * ld.residue_degree;
            s.deg_n += ld.conductor * ld.residue_degree;
            if (!ld.semistable()) s.semistable = false;
        }
        s.places.push_back(std::move(pa));
    }
    s.a_prime = expected_degree(s.deg_n, s.genus, dim_tr);
    return s;
}

base_change_analysis analyze_base_change(const weierstrass_model& m, const rational_function& D,
                                         const analysis_options& opt) {
    base_change_analysis r;
    const quad_ext ext = make_quad_ext(D);
    r.base = analyze(m, opt);
    r.twist = analyze(quadratic_twist(m, rational_function(ext.d0)), opt);
    r.summary = aggregate(ext, m, r.base.dim_tr, opt.precision_cap);
    r.product = base_change_product(r.base.L.poly, r.twist.L.poly);
    check_theorem(r.product.degree() == r.summary.a_prime,
                  "base change degree mismatch: a' = " + std::to_string(r.summary.a_prime) + " but deg L = " +
                      std::to_string(r.product.degree()));
    mu_inputs in;
    in.deg_delta = r.summary.deg_delta;
    in.deg_n = r.summary.deg_n;
    in.genus = r.summary.genus;
    in.dim_tr = r.summary.dim_tr;
    in.constant = r.summary.dim_tr == 1;
    in.szpiro_applicable = !r.base.meta.j_is_pth_power || r.base.meta.is_isotrivial;
    r.iwasawa = iwasawa_invariants(r.product, in, r.summary.semistable);
    return r;
}

}  // namespace ellmu
