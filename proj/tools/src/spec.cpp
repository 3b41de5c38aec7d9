#include "ellmu_tools/spec.hpp"

#include <algorithm>
#include <cstdio>

#include "ellmu/errors.hpp"
#include "ellmu/lfunction.hpp"

namespace ellmu::tools {

field_ref curve_spec::field() const {
    if (p < 2) throw input_error("curve spec needs a prime p");
    if (e < 1) throw input_error("curve spec needs e >= 1");
    return field_ctx::canonical(p, e);
}

weierstrass_model curve_spec::model() const {
    if (coeffs.has_value() == legendre.has_value()) throw input_error("curve spec needs exactly one of coeffs and legendre");
    const field_ref f = field();
    if (legendre) return legendre_curve(parse_rational_function(f, *legendre));
    return weierstrass_model::from_strings(f, *coeffs);
}

std::optional<rational_function> curve_spec::legendre_parameter() const {
    if (!legendre) return std::nullopt;
    return parse_rational_function(field(), *legendre);
}

std::optional<rational_function> curve_spec::extension() const {
    if (!ext) return std::nullopt;
    return parse_rational_function(field(), *ext);
}

ordered_json curve_spec::to_json() const {
    ordered_json j;
    j["p"] = p;
    j["e"] = e;
    if (coeffs) j["coeffs"] = *coeffs;
    if (legendre) j["legendre"] = *legendre;
    if (ext) j["ext"] = *ext;
    if (assert_constant) j["assert_constant"] = true;
    if (precision_cap) j["precision_cap"] = *precision_cap;
    if (work_budget) j["work_budget"] = *work_budget;
    return j;
}

curve_spec curve_spec::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw input_error("curve spec must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        static const std::array<const char*, 8> known{"p", "e", "coeffs", "legendre", "ext", "assert_constant",
                                                      "precision_cap", "work_budget"};
        if (std::find(known.begin(), known.end(), k) == known.end()) throw input_error("unknown curve spec field: " + k);
    }
    curve_spec s;
    try {
        s.p = j.at("p").get<std::uint32_t>();
        s.e = j.value("e", 1u);
        if (j.contains("coeffs")) {
            const auto c = j.at("coeffs").get<std::vector<std::string>>();
            if (c.size() != 5) throw input_error("coeffs needs five entries a1, a2, a3, a4, a6");
            s.coeffs = std::array<std::string, 5>{c[0], c[1], c[2], c[3], c[4]};
        }
        if (j.contains("legendre")) s.legendre = j.at("legendre").get<std::string>();
        if (j.contains("ext")) s.ext = j.at("ext").get<std::string>();
        s.assert_constant = j.value("assert_constant", false);
        if (j.contains("precision_cap")) s.precision_cap = j.at("precision_cap").get<int>();
        if (j.contains("work_budget")) s.work_budget = j.at("work_budget").get<double>();
    } catch (const nlohmann::json::exception& ex) {
        throw input_error(std::string("malformed curve spec: ") + ex.what());
    }
    if (s.coeffs.has_value() == s.legendre.has_value())
        throw input_error("curve spec needs exactly one of coeffs and legendre");
    return s;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string curve_hash(const weierstrass_model& m) { return hex64(fnv1a64(canonical_text(m))); }

}  // namespace ellmu::tools
