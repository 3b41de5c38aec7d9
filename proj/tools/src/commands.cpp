#include "ellmu_tools/commands.hpp"

#include "ellmu/errors.hpp"
#include "ellmu/local.hpp"

namespace ellmu::tools {

analysis_options make_analysis_options(const curve_spec& spec, const run_options& opt) {
    analysis_options a;
    if (spec.precision_cap) a.precision_cap = *spec.precision_cap;
    if (opt.precision_cap) a.precision_cap = *opt.precision_cap;
    if (spec.work_budget) a.lf.work_budget = *spec.work_budget;
    if (opt.work_budget) a.lf.work_budget = *opt.work_budget;
    if (a.precision_cap < 1) throw input_error("precision cap must be positive");
    if (!(a.lf.work_budget > 0)) throw input_error("work budget must be positive");
    a.lf.threads = std::max(1, opt.threads);
    a.cache = opt.cache;
    a.assert_constant = spec.assert_constant;
    return a;
}

namespace {

command_result finish(const std::string& command, const curve_spec* spec, ordered_json body,
                      const std::map<std::string, bool>& checks) {
    command_result r;
    r.report = make_report(command, spec, std::move(body), checks);
    r.all_checks_pass = all_pass(checks);
    return r;
}

place parse_place(const field_ref& f, const std::string& text) {
    if (text == "inf" || text == "infinity") return place::infinity(f);
    const rational_function r = parse_rational_function(f, text);
    if (r.den().degree() != 0) throw input_error("place must be given by a polynomial: " + text);
    poly pi = r.num();
    if (pi.degree() < 1) throw input_error("place polynomial must have positive degree: " + text);
    pi = pi.monic();
    return place(pi);
}

}  // namespace

command_result run_analyze(const curve_spec& spec, const run_options& opt) {
    const analysis_options aopt = make_analysis_options(spec, opt);
    const weierstrass_model m = spec.model();
    if (const auto D = spec.extension()) {
        const base_change_analysis b = analyze_base_change(m, *D, aopt);
        ordered_json body = to_json(b.base);
        body["base_change"] = to_json(b);
        return finish("analyze", &spec, std::move(body), collect_checks(b));
    }
    const analysis a = analyze(m, aopt, spec.legendre_parameter());
    return finish("analyze", &spec, to_json(a), collect_checks(a));
}

command_result run_lfunction(const curve_spec& spec, const run_options& opt) {
    const analysis a = analyze(spec.model(), make_analysis_options(spec, opt), spec.legendre_parameter());
    ordered_json full = to_json(a);
    ordered_json body;
    body["divisors"] = full["divisors"];
    body["L"] = full["L"];
    std::map<std::string, bool> checks;
    checks["lfunction.fe"] = a.L.poly.satisfies_functional_equation();
    checks["lfunction.power_sum_verification"] = a.L.verification_ok;
    checks["lfunction.degree"] = a.L.poly.degree() == a.a;
    return finish("lfunction", &spec, std::move(body), checks);
}

command_result run_local(const curve_spec& spec, const std::string& place_text, const run_options& opt) {
    const analysis_options aopt = make_analysis_options(spec, opt);
    const weierstrass_model m = spec.model();
    const place v = parse_place(m.field(), place_text);
    const local_data ld = tate(m, v, aopt.precision_cap);
    ordered_json body;
    body["local"] = to_json(ld);
    std::map<std::string, bool> checks;
    checks["local.conductor_range"] = ld.conductor >= 0 && ld.conductor <= ld.delta;
    checks["local.reduction_consistent"] =
        (ld.reduction == reduction_kind::good) == (ld.delta == 0) && (ld.conductor == 1) == ld.multiplicative();
    return finish("local", &spec, std::move(body), checks);
}

command_result run_twist_quadratic(const curve_spec& spec, const std::string& D, const run_options& opt) {
    const analysis_options aopt = make_analysis_options(spec, opt);
    const weierstrass_model m = spec.model();
    const rational_function d = parse_rational_function(m.field(), D);
    const analysis a = analyze(quadratic_twist(m, d), aopt);
    ordered_json body;
    ordered_json tw;
    tw["kind"] = "quadratic";
    tw["D"] = d.format();
    body["twist"] = tw;
    ordered_json full = to_json(a);
    for (auto& [k, v] : full.items()) body[k] = std::move(v);
    return finish("twist", &spec, std::move(body), collect_checks(a));
}

command_result run_twist_frobenius(const curve_spec& spec, std::uint32_t mexp, const run_options& opt) {
    const analysis_options aopt = make_analysis_options(spec, opt);
    const weierstrass_model m = spec.model();
    const analysis base = analyze(m, aopt, spec.legendre_parameter());
    const analysis a = analyze(frobenius_twist(m, mexp), aopt);
    ordered_json body;
    ordered_json tw;
    tw["kind"] = "frobenius";
    tw["m"] = mexp;
    tw["base_mu"] = base.mu().mu;
    tw["base_deg_delta"] = base.mu().deg_delta;
    tw["base_semistable"] = base.places.semistable;
    std::map<std::string, bool> checks = collect_checks(a);
    for (const auto& [k, v] : collect_checks(base)) checks["base." + k] = v;
    const std::uint64_t p = m.field()->characteristic();
    const std::uint64_t pm = checked_pow(p, mexp);
    checks["frobenius.delta_scaling"] =
        static_cast<std::uint64_t>(a.mu().deg_delta) == pm * static_cast<std::uint64_t>(base.mu().deg_delta);
    if (base.places.semistable) {
        const int expected = frobenius_mu_transport(base.mu().mu, base.mu().deg_delta, static_cast<int>(mexp), p, true);
        tw["transported_mu"] = expected;
        checks["frobenius.mu_transport"] = expected == a.mu().mu;
    } else {
        tw["transported_mu"] = nullptr;
    }
    body["twist"] = tw;
    ordered_json full = to_json(a);
    for (auto& [k, v] : full.items()) body[k] = std::move(v);
    return finish("twist", &spec, std::move(body), checks);
}

command_result run_growth(const curve_spec& spec, int n_from, int n_to, const run_options& opt) {
    if (n_from < 0 || n_to < n_from) throw input_error("growth range must satisfy 0 <= from <= to");
    const analysis a = analyze(spec.model(), make_analysis_options(spec, opt), spec.legendre_parameter());
    const auto [p, e] = prime_power(a.model.field()->size());
    ordered_json body;
    body["mu"] = a.mu().mu;
    body["lambda"] = a.iwasawa.lambda.value;
    body["lambda_conditional"] = a.iwasawa.lambda.conditional;
    body["lambda_determined"] = a.iwasawa.lambda.determined;
    ordered_json rows = ordered_json::array();
    for (const auto& r : growth_table(a.mu().mu, a.iwasawa.lambda.value, e, p, n_from, n_to)) {
        ordered_json row;
        row["n"] = r.n;
        row["leading"] = to_json(r.leading);
        rows.push_back(row);
    }
    body["rows"] = rows;
    return finish("growth", &spec, std::move(body), collect_checks(a));
}

command_result run_survey(const survey_options& sopt, survey_result* raw) {
    survey_result res = scan(sopt);
    ordered_json body = to_json(res);
    std::map<std::string, bool> checks;
    bool deg_ok = true, bound_ok = true, reports_ok = true, no_errors = true;
    for (const auto& r : res.records) {
        deg_ok = deg_ok && r.deg_delta_ok;
        if (r.mu) bound_ok = bound_ok && *r.mu >= 0 && *r.mu <= sopt.n - 1;
        if (r.report) reports_ok = reports_ok && r.report->all_checks_pass();
        if (r.error.rfind("theorem", 0) == 0) no_errors = false;
    }
    int total = 0;
    for (const auto& [k, v] : res.histogram) total += v;
    checks["survey.deg_delta_is_12n"] = deg_ok;
    checks["survey.mu_le_n_minus_1"] = bound_ok;
    checks["survey.reports_pass"] = reports_ok;
    checks["survey.no_theorem_violations"] = no_errors;
    checks["survey.histogram_total"] = total == res.valid();
    command_result out = finish("survey", nullptr, std::move(body), checks);
    if (raw) *raw = std::move(res);
    return out;
}

ordered_json strip_volatile(ordered_json report) {
    report.erase("timing");
    report.erase("cache");
    return report;
}

}  // namespace ellmu::tools
