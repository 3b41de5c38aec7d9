#pragma once

#include <array>
#include <cstdint>

#include "ellmu/finite_field.hpp"

namespace ellmu {

struct fiber_count {
    std::uint64_t field_size = 0;
    std::uint64_t count = 0;  // projective points, origin included
    std::int64_t trace = 0;   // field_size + 1 - count
};

// Discriminant of y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6 over F.
ff_elem discriminant(const field_ctx& F, const std::array<ff_elem, 5>& a);

// Exact projective count; character sum for odd p, Artin-Schreier trace
// test per x for p = 2. Throws input_error on a singular equation.
fiber_count count_points(const field_ctx& F, const std::array<ff_elem, 5>& a);

// Exhaustive enumeration of affine pairs (test oracle, O(q^2)).
fiber_count count_points_naive(const field_ctx& F, const std::array<ff_elem, 5>& a);

}  // namespace ellmu
