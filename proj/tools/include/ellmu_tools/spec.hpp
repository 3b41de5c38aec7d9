#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ellmu/curve.hpp"

namespace ellmu::tools {

using ordered_json = nlohmann::ordered_json;

// Curve input: {p, e, coeffs: [a1, a2, a3, a4, a6]} or {p, e, legendre: f},
// optionally with {ext: D}. Strings are rational functions in t over F_q
// with generator symbol g.
struct curve_spec {
    std::uint32_t p = 0;
    std::uint32_t e = 1;
    std::optional<std::array<std::string, 5>> coeffs;
    std::optional<std::string> legendre;
    std::optional<std::string> ext;
    bool assert_constant = false;
    std::optional<int> precision_cap;
    std::optional<double> work_budget;

    field_ref field() const;
    weierstrass_model model() const;
    std::optional<rational_function> legendre_parameter() const;
    std::optional<rational_function> extension() const;

    ordered_json to_json() const;
    static curve_spec from_json(const nlohmann::json& j);
};

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t h);

// FNV-1a of the canonical model text, independent of how the input was spelled.
std::string curve_hash(const weierstrass_model& m);

}  // namespace ellmu::tools
