#include "ellmu/analysis.hpp"

#include "ellmu/errors.hpp"

namespace ellmu {

iwasawa_summary iwasawa_invariants(const l_polynomial& P, mu_inputs in, bool semistable_everywhere) {
    iwasawa_summary s;
    s.newton = compute_newton_polygon(P);
    check_theorem(s.newton.vertices_integral(), "Newton polygon vertex off the integer lattice");
    s.theta = compute_theta(P, s.newton);
    in.theta = s.theta.value;
    in.a = P.degree();
    s.mu = compute_mu(in);
    s.mu.checks["fe"] = P.satisfies_functional_equation();
    s.mu.checks["vertices_integral"] = s.newton.vertices_integral();
    s.mu.checks["slope_symmetry"] = s.newton.symmetric();
    s.mu.checks["theta_two_way"] = s.theta.primitivity == s.theta.slopes;
    s.mu.checks["integrality"] = s.theta.primitivity.is_integer() && in.deg_delta % 12 == 0;
    s.lambda = lambda_analytic(P, s.theta.value, semistable_everywhere);
    return s;
}

analysis analyze(const weierstrass_model& m, const analysis_options& opt, std::optional<rational_function> legendre) {
    analysis r;
    r.model = m;
    r.meta = describe_curve(m, std::move(legendre));
    r.places = survey_places(m, opt.precision_cap);
    const std::uint64_t q = m.field()->size();

    std::optional<std::int64_t> trace;
    switch (r.meta.constancy_class.kind) {
        case constancy_kind::constant:
            trace = r.meta.constancy_class.trace;
            break;
        case constancy_kind::undetermined:
            if (opt.assert_constant) {
                check_theorem(r.places.discriminant.degree() == 0, "asserted constant curve has bad reduction");
                const bigint s1 = fiber_sum_closed_places(r.places, 1, opt.lf, opt.cache);
                check_theorem(s1 % (q + 1) == 0, "asserted constant curve: S_1 not divisible by q + 1");
                trace = static_cast<std::int64_t>(s1 / (q + 1));
                r.warnings.push_back("constancy asserted by the caller");
            } else {
                r.warnings.push_back("constancy undetermined; dim Tr taken as 0");
            }
            break;
        case constancy_kind::non_constant:
            break;
    }
    r.dim_tr = trace ? 1 : 0;
    r.constant = make_constant_part(trace, q);
    r.a = expected_degree(r.places.conductor.degree(), r.genus, r.dim_tr);
    r.L = compute_lfunction(r.places, r.a, r.constant, opt.lf, opt.cache);

    mu_inputs in;
    in.deg_delta = r.places.discriminant.degree();
    in.deg_n = r.places.conductor.degree();
    in.genus = r.genus;
    in.dim_tr = r.dim_tr;
    in.constant = r.dim_tr == 1;
    in.szpiro_applicable = !r.meta.j_is_pth_power || r.meta.is_isotrivial;
    r.iwasawa = iwasawa_invariants(r.L.poly, in, r.places.semistable);
    if (!r.L.sign_determined) {
        r.warnings.push_back("functional-equation sign undetermined within the work budget");
        const iwasawa_summary alt = iwasawa_invariants(*r.L.alternate, in, r.places.semistable);
        r.iwasawa.mu.checks["sign_invariance"] =
            alt.theta.value == r.iwasawa.theta.value && alt.mu.mu == r.iwasawa.mu.mu && alt.mu.all_checks_pass();
        if (alt.lambda.value != r.iwasawa.lambda.value) r.iwasawa.lambda.determined = false;
    }
    return r;
}

}  // namespace ellmu
