#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ellmu/curve.hpp"
#include "ellmu/function_field.hpp"
#include "ellmu/point_count.hpp"

namespace ellmu {

enum class kodaira_symbol { I0, In, II, III, IV, I0s, Ins, IVs, IIIs, IIs };

struct kodaira_type {
    kodaira_symbol symbol = kodaira_symbol::I0;
    int n = 0;  // for In and In*
    std::string str() const;
    // Number of irreducible components of the special fiber.
    int components() const;
    friend bool operator==(const kodaira_type&, const kodaira_type&) = default;
};

enum class reduction_kind { good, split_multiplicative, nonsplit_multiplicative, additive };
std::string to_string(reduction_kind r);

struct local_data {
    place v;
    int residue_degree = 1;  // over the constant field
    std::uint64_t residue_size = 0;
    int ramification = 1;
    kodaira_type kodaira;
    int delta = 0;
    int conductor = 0;
    reduction_kind reduction = reduction_kind::good;
    int components = 1;
    int tamagawa = 1;
    std::optional<std::int64_t> a_v;
    std::optional<bool> supersingular;
    std::vector<bigint> euler_factor;  // in T_v, constant term first
    field_ref residue_field;
    std::array<ff_elem, 5> reduced_model{};  // residues of the minimal model

    bool semistable() const { return reduction != reduction_kind::additive; }
    bool multiplicative() const {
        return reduction == reduction_kind::split_multiplicative || reduction == reduction_kind::nonsplit_multiplicative;
    }
};

struct tate_result {
    local_data data;
    std::array<laurent_series, 5> minimal_model;
};

// Tate's algorithm on integral local coefficients over k((u)). Throws
// precision_exhausted when a decision needs coefficients beyond precision.
// Does not fill place/degree fields.
tate_result tate_series(std::array<laurent_series, 5> a, bool count_good = true);

// Full local analysis at the place of ctx, with adaptive precision doubling
// up to precision_cap.
tate_result tate_full(const weierstrass_model& m, const local_context& ctx, int precision_cap = 1 << 16);
local_data tate(const weierstrass_model& m, const local_context& ctx, int precision_cap = 1 << 16);
local_data tate(const weierstrass_model& m, const place& v, int precision_cap = 1 << 16);

// a_v divisible by p (good reduction only).
bool is_supersingular(const local_data& ld);

// Frobenius trace of the local factor over the degree-m extension of the
// residue field: roots of 1 - a T + q T^2 for good places, +1 / (-1)^m for
// multiplicative, 0 for additive.
bigint local_trace(const local_data& ld, int m);

}  // namespace ellmu
