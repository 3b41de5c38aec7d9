#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellmu/curve.hpp"
#include "ellmu/iwasawa.hpp"
#include "ellmu/lfunction.hpp"

namespace ellmu {

struct analysis_options {
    int precision_cap = 1 << 16;
    lfunction_options lf;
    trace_cache* cache = nullptr;
    // Treat an undetermined isotrivial curve as constant; the trace is read
    // off the first fiber sum.
    bool assert_constant = false;
};

// Invariants read off an L-polynomial together with global degrees.
struct iwasawa_summary {
    newton_polygon newton;
    theta_values theta;
    mu_report mu;
    lambda_report lambda;
};

iwasawa_summary iwasawa_invariants(const l_polynomial& P, mu_inputs in, bool semistable_everywhere);

struct analysis {
    weierstrass_model model;
    curve_meta meta;
    place_survey places;
    int genus = 0;
    int dim_tr = 0;
    constant_part constant;
    int a = 0;
    lfunction_result L;
    iwasawa_summary iwasawa;
    std::vector<std::string> warnings;

    const mu_report& mu() const { return iwasawa.mu; }
};

analysis analyze(const weierstrass_model& m, const analysis_options& opt = {},
                 std::optional<rational_function> legendre = std::nullopt);

}  // namespace ellmu
