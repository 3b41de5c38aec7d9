#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellmu/curve.hpp"
#include "ellmu/local.hpp"

namespace ellmu {

// Integer polynomial 1 + c_1 T + ... + c_a T^a over base size q with
// c_{a-i} = sign q^(a-2i) c_i.
struct l_polynomial {
    std::vector<bigint> coeffs{bigint(1)};
    std::uint64_t q = 0;
    int sign = 1;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::string format(const std::string& var = "T") const;
    bool satisfies_functional_equation() const;
    // Power sums p_1..p_k of the reciprocal roots.
    std::vector<bigint> power_sums(int k) const;
};

struct constant_part {
    std::vector<bigint> p0{bigint(1)};
    std::vector<bigint> p2{bigint(1)};
    std::optional<std::int64_t> trace;
    // Tr(Frob^k) on the roots of P0 plus on those of P2.
    bigint trace_sum(int k, std::uint64_t q) const;
};

constant_part make_constant_part(std::optional<std::int64_t> trace, std::uint64_t q);

int expected_degree(int deg_n, int genus, int dim_tr);

// Local data at every place where the given model can fail to be a good
// integral model: zeros of the discriminant, poles of a coefficient, and
// infinity. Every other place has good reduction with the given equation.
struct place_survey {
    weierstrass_model model;
    std::vector<local_data> special;  // sorted by place
    divisor discriminant;             // minimal, sum of delta_v v
    divisor conductor;
    bool semistable = true;

    const local_data* find(const place& v) const;
};

place_survey survey_places(const weierstrass_model& m, int precision_cap = 1 << 16);

struct lfunction_options {
    // Upper bound on field operations spent on one power sum.
    double work_budget = 4e9;
    int threads = 1;
    // Extra power sums checked against the assembled polynomial, within budget.
    int verify_extra = 2;
    double verify_budget = 5e7;
    // When the sign needs power sums beyond the budget, return both
    // candidates instead of failing.
    bool allow_sign_ambiguity = true;
};

// Frobenius trace of the fiber over a good closed place, for one curve.
struct trace_key {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::string curve;  // canonical text of the model
    std::string place;
    int degree = 0;
};

std::string canonical_text(const weierstrass_model& m);

// Optional store of traces; implementations need not be thread safe.
class trace_cache {
public:
    virtual ~trace_cache() = default;
    virtual std::optional<std::int64_t> get(const trace_key& key) = 0;
    virtual void put(const trace_key& key, std::int64_t trace) = 0;
};

// Estimated field operations to obtain S_k by closed places.
double power_sum_cost(std::uint64_t q, int k);

// S_k = sum over closed places v with deg v | k of deg v * a_v(k / deg v),
// Euler factors of degree deg v.
bigint fiber_sum_closed_places(const place_survey& s, int k, const lfunction_options& opt = {},
                               trace_cache* cache = nullptr);
// The same sum over the points of P^1(F_{q^k}), counting each fiber over
// F_{q^k} directly (independent oracle; re-runs Tate over extended residue
// fields at special points).
bigint fiber_sum_rational_points(const place_survey& s, int k);

struct assembly_result {
    std::optional<l_polynomial> poly;  // empty if the sign is still ambiguous
    std::vector<int> consistent_signs;
    std::vector<l_polynomial> candidates;
};

// Newton identities up to floor(a/2), remaining coefficients from the
// functional equation; signs tested against all given power sums.
assembly_result assemble(const std::vector<bigint>& power_sums, int a, std::uint64_t q);

// k c_k = -sum_{i=1..k} p_i c_{k-i}; throws theorem_violation on a
// non-integral coefficient.
std::vector<bigint> newton_coefficients(const std::vector<bigint>& power_sums, int n);

struct lfunction_result {
    l_polynomial poly;
    std::vector<bigint> power_sums;  // of P1, p_1..p_K as computed
    std::vector<bigint> fiber_sums;  // S_1..S_K
    int verified_extra = 0;
    bool verification_ok = true;
    // False when both signs fit every power sum within budget; poly then
    // carries sign +1 and alternate sign -1. They differ only in c_i for i > a/2.
    bool sign_determined = true;
    std::optional<l_polynomial> alternate;
};

// P1 for the curve over F_q(t) given the expected degree and constant part.
lfunction_result compute_lfunction(const place_survey& s, int a, const constant_part& cp,
                                   const lfunction_options& opt = {}, trace_cache* cache = nullptr);

l_polynomial base_change_product(const l_polynomial& x, const l_polynomial& y);

}  // namespace ellmu
