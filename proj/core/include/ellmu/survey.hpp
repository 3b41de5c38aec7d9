#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellmu/analysis.hpp"

namespace ellmu {

// Weierstrass data (g2, g3) as sections of O(4n), O(6n) on P^1.
struct moduli_point {
    int n = 1;
    poly g2;
    poly g3;
};

struct validity {
    bool valid = false;
    std::optional<place> failing;
    std::string reason;
};

// 4 g2^3 - 27 g3^2 != 0 and min(3 ord_v g2, 2 ord_v g3) < 12 at every place,
// with ord_inf g2 = 4n - deg g2 and ord_inf g3 = 6n - deg g3. Requires p > 3.
validity validate(const moduli_point& pt);

// y^2 = x^3 - g2 x - g3
weierstrass_model moduli_curve(const moduli_point& pt);

struct survey_options {
    int n = 1;
    std::uint32_t q = 5;
    int samples = 100;  // valid points wanted
    std::uint64_t seed = 42;
    bool exhaustive = false;
    int max_attempts_factor = 100;
    // Field operations allowed for the power sums of one point.
    double point_budget = 2e7;
    int threads = 1;
    int precision_cap = 1 << 16;
};

struct survey_record {
    int index = 0;
    moduli_point point;
    int deg_delta = 0;
    int a = 0;
    // Exact when the L-polynomial was assembled or the prefix bound met mu >= 0.
    std::optional<int> mu;
    int theta_lower_bound = 0;
    int power_sums_used = 0;
    bool full_lfunction = false;
    bool deg_delta_ok = false;
    std::optional<mu_report> report;
    std::string error;
};

struct survey_result {
    survey_options options;
    int attempts = 0;
    int rejected = 0;
    std::vector<survey_record> records;
    std::map<std::string, int> histogram;  // "0", "1", ..., "undetermined", "error"
    bool partial = false;

    int valid() const { return static_cast<int>(records.size()); }
    // Fraction of valid points with mu determined to be 0.
    double mu_zero_fraction() const;
};

// Largest i - v_q(c_i) over c_1..c_k with c from Newton's identities; 0 for k = 0.
int theta_prefix_bound(const std::vector<bigint>& power_sums, std::uint64_t q);

survey_record evaluate_point(const moduli_point& pt, const survey_options& opt, int index = 0);

// Deterministic for a fixed seed regardless of the thread count.
survey_result scan(const survey_options& opt);

}  // namespace ellmu
