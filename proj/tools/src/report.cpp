#include "ellmu_tools/report.hpp"

#include <algorithm>
#include <limits>

namespace ellmu::tools {

ordered_json to_json(const bigint& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

ordered_json to_json(const exact_rational& x) {
    if (x.is_integer()) return to_json(x.numerator());
    return x.str();
}

ordered_json to_json(const std::vector<bigint>& xs) {
    ordered_json out = ordered_json::array();
    for (const auto& x : xs) out.push_back(to_json(x));
    return out;
}

ordered_json to_json(const local_data& ld) {
    ordered_json j;
    j["place"] = ld.v.format();
    j["degree"] = ld.v.degree();
    if (ld.ramification != 1 || ld.residue_degree != ld.v.degree()) {
        j["ramification"] = ld.ramification;
        j["residue_degree"] = ld.residue_degree;
    }
    j["kodaira"] = ld.kodaira.str();
    j["reduction"] = to_string(ld.reduction);
    j["delta"] = ld.delta;
    j["conductor"] = ld.conductor;
    j["components"] = ld.components;
    j["tamagawa"] = ld.tamagawa;
    j["a_v"] = ld.a_v ? ordered_json(*ld.a_v) : ordered_json(nullptr);
    j["supersingular"] = ld.supersingular ? ordered_json(*ld.supersingular) : ordered_json(nullptr);
    j["euler_factor"] = to_json(ld.euler_factor);
    return j;
}

ordered_json to_json(const l_polynomial& P) {
    ordered_json j;
    j["text"] = P.format();
    j["degree"] = P.degree();
    j["q"] = P.q;
    j["sign"] = P.sign;
    j["coeffs"] = to_json(P.coeffs);
    return j;
}

ordered_json to_json(const newton_polygon& np) {
    ordered_json j;
    ordered_json v = ordered_json::array();
    for (const auto& [x, y] : np.vertices) v.push_back({x, to_json(y)});
    j["vertices"] = v;
    ordered_json s = ordered_json::array();
    for (const auto& [lam, mult] : np.slopes) {
        ordered_json e;
        e["slope"] = to_json(lam);
        e["multiplicity"] = mult;
        s.push_back(e);
    }
    j["slopes"] = s;
    return j;
}

ordered_json to_json(const mu_report& r) {
    ordered_json j;
    j["mu"] = r.mu;
    j["theta"] = r.theta;
    j["a"] = r.a;
    j["b"] = to_json(r.b);
    j["d"] = to_json(r.d);
    j["deg_delta"] = r.deg_delta;
    j["deg_n"] = r.deg_n;
    j["deg_l"] = r.deg_l;
    j["genus"] = r.genus;
    j["dim_tr"] = r.dim_tr;
    j["kodaira_dimension"] = to_string(r.kodaira_dim);
    j["upper_bound"] = r.upper_bound;
    ordered_json c;
    for (const auto& [k, v] : r.checks) c[k] = v;
    j["checks"] = c;
    return j;
}

ordered_json to_json(const lambda_report& r) {
    ordered_json j;
    j["value"] = r.value;
    j["conditional"] = r.conditional;
    j["determined"] = r.determined;
    return j;
}

ordered_json to_json(const curve_meta& m) {
    ordered_json j;
    j["j"] = m.j.format();
    j["isotrivial"] = m.is_isotrivial;
    j["j_pth_power"] = m.j_is_pth_power;
    ordered_json c;
    c["kind"] = to_string(m.constancy_class.kind);
    c["trace"] = m.constancy_class.trace ? ordered_json(*m.constancy_class.trace) : ordered_json(nullptr);
    c["reason"] = m.constancy_class.reason;
    j["constancy"] = c;
    if (m.legendre_parameter) j["legendre"] = m.legendre_parameter->format();
    return j;
}

ordered_json to_json(const iwasawa_summary& s) {
    ordered_json j;
    j["newton"] = to_json(s.newton);
    ordered_json t;
    t["primitivity"] = to_json(s.theta.primitivity);
    t["slopes"] = to_json(s.theta.slopes);
    t["value"] = s.theta.value;
    j["theta"] = t;
    j["mu"] = to_json(s.mu);
    j["lambda"] = to_json(s.lambda);
    return j;
}

namespace {

ordered_json divisor_json(const divisor& d) {
    ordered_json j;
    j["text"] = d.format();
    j["degree"] = d.degree();
    return j;
}

ordered_json growth_json(const iwasawa_summary& s, std::uint64_t q) {
    const auto [p, e] = prime_power(q);
    ordered_json rows = ordered_json::array();
    for (const auto& r : growth_table(s.mu.mu, s.lambda.value, e, p, 0, 4)) {
        ordered_json row;
        row["n"] = r.n;
        row["leading"] = to_json(r.leading);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

ordered_json to_json(const analysis& a) {
    ordered_json j;
    ordered_json model;
    static const std::array<const char*, 5> names{"a1", "a2", "a3", "a4", "a6"};
    for (std::size_t i = 0; i < 5; ++i) model[names[i]] = a.model.a()[i].format();
    j["model"] = model;
    j["meta"] = to_json(a.meta);
    ordered_json local = ordered_json::array();
    for (const auto& ld : a.places.special)
        if (ld.reduction != reduction_kind::good) local.push_back(to_json(ld));
    j["local"] = local;
    ordered_json div;
    div["discriminant"] = divisor_json(a.places.discriminant);
    div["conductor"] = divisor_json(a.places.conductor);
    j["divisors"] = div;
    j["semistable"] = a.places.semistable;
    ordered_json L;
    L["a"] = a.a;
    L["P1"] = to_json(a.L.poly);
    L["sign_determined"] = a.L.sign_determined;
    if (a.L.alternate) L["alternate"] = to_json(*a.L.alternate);
    L["power_sums"] = to_json(a.L.power_sums);
    L["verified_extra"] = a.L.verified_extra;
    ordered_json cp;
    cp["P0"] = to_json(a.constant.p0);
    cp["P2"] = to_json(a.constant.p2);
    cp["trace"] = a.constant.trace ? ordered_json(*a.constant.trace) : ordered_json(nullptr);
    L["constant_part"] = cp;
    j["L"] = L;
    ordered_json iw = to_json(a.iwasawa);
    iw["growth"] = growth_json(a.iwasawa, a.model.field()->size());
    j["iwasawa"] = iw;
    j["warnings"] = a.warnings;
    return j;
}

ordered_json to_json(const base_change_analysis& b) {
    ordered_json j;
    j["D"] = b.summary.ext.D.format();
    j["D0"] = b.summary.ext.d0.format();
    j["genus_prime"] = b.summary.genus;
    ordered_json ram = ordered_json::array();
    for (const auto& v : b.summary.ext.ramified) ram.push_back(v.format());
    j["ramified"] = ram;
    ordered_json above = ordered_json::array();
    for (const auto& pa : b.summary.places) {
        ordered_json e;
        e["base"] = pa.base.format();
        e["behavior"] = to_string(pa.behavior);
        ordered_json ws = ordered_json::array();
        for (const auto& ld : pa.above) ws.push_back(to_json(ld));
        e["above"] = ws;
        above.push_back(e);
    }
    j["places_above"] = above;
    j["deg_delta"] = b.summary.deg_delta;
    j["deg_n"] = b.summary.deg_n;
    j["a_prime"] = b.summary.a_prime;
    j["semistable"] = b.summary.semistable;
    j["L_base"] = to_json(b.base.L.poly);
    j["L_twist_by_D0"] = to_json(b.twist.L.poly);
    j["L_product"] = to_json(b.product);
    j["iwasawa"] = to_json(b.iwasawa);
    return j;
}

ordered_json to_json(const moduli_point& pt) {
    ordered_json j;
    j["n"] = pt.n;
    j["g2"] = pt.g2.format();
    j["g3"] = pt.g3.format();
    return j;
}

ordered_json to_json(const survey_record& r) {
    ordered_json j;
    j["index"] = r.index;
    j["point"] = to_json(r.point);
    j["deg_delta"] = r.deg_delta;
    j["deg_delta_ok"] = r.deg_delta_ok;
    j["a"] = r.a;
    j["mu"] = r.mu ? ordered_json(*r.mu) : ordered_json(nullptr);
    j["theta_lower_bound"] = r.theta_lower_bound;
    j["power_sums_used"] = r.power_sums_used;
    j["full_lfunction"] = r.full_lfunction;
    j["report"] = r.report ? to_json(*r.report) : ordered_json(nullptr);
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

ordered_json to_json(const survey_result& r) {
    ordered_json j;
    ordered_json o;
    o["n"] = r.options.n;
    o["q"] = r.options.q;
    o["samples"] = r.options.samples;
    o["seed"] = r.options.seed;
    o["exhaustive"] = r.options.exhaustive;
    o["point_budget"] = r.options.point_budget;
    j["options"] = o;
    j["attempts"] = r.attempts;
    j["rejected"] = r.rejected;
    j["valid"] = r.valid();
    j["partial"] = r.partial;
    ordered_json h;
    for (const auto& [k, v] : r.histogram) h[k] = v;
    j["histogram"] = h;
    j["mu_zero_fraction"] = r.mu_zero_fraction();
    return j;
}

std::map<std::string, bool> collect_checks(const analysis& a) {
    std::map<std::string, bool> out;
    for (const auto& [k, v] : a.mu().checks) out["iwasawa." + k] = v;
    out["lfunction.power_sum_verification"] = a.L.verification_ok;
    out["lfunction.degree"] = a.L.poly.degree() == a.a;
    out["local.delta_degree"] = a.places.discriminant.degree() % 12 == 0;
    return out;
}

std::map<std::string, bool> collect_checks(const base_change_analysis& b) {
    std::map<std::string, bool> out;
    for (const auto& [k, v] : collect_checks(b.base)) out["base." + k] = v;
    for (const auto& [k, v] : collect_checks(b.twist)) out["twist." + k] = v;
    for (const auto& [k, v] : b.iwasawa.mu.checks) out["extension.iwasawa." + k] = v;
    out["extension.degree_matches_product"] = b.product.degree() == b.summary.a_prime;
    return out;
}

ordered_json make_report(const std::string& command, const curve_spec* spec, ordered_json body,
                         const std::map<std::string, bool>& checks) {
    ordered_json j;
    j["schema"] = report_schema;
    j["command"] = command;
    if (spec) j["curve"] = spec->to_json();
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    ordered_json c;
    for (const auto& [k, v] : checks) c[k] = v;
    j["checks"] = c;
    j["all_checks_pass"] = all_pass(checks);
    return j;
}

bool all_pass(const std::map<std::string, bool>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

}  // namespace ellmu::tools
