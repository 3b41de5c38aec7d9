#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellmu/exact_rational.hpp"
#include "ellmu/lfunction.hpp"

namespace ellmu {

// q = p^e split into its parts; throws unless q is a prime power.
std::pair<std::uint64_t, int> prime_power(std::uint64_t q);

// v_q of a nonzero integer as an exact rational v_p / e.
exact_rational q_valuation(const bigint& c, std::uint64_t q);

struct newton_polygon {
    std::vector<std::pair<int, exact_rational>> vertices;
    // Non-decreasing slopes with horizontal multiplicities.
    std::vector<std::pair<exact_rational, int>> slopes;

    bool vertices_integral() const;
    // {lambda_j} = {2 - lambda_j} as multisets.
    bool symmetric() const;
    int length() const;
};

// Lower convex hull of (i, v_q(c_i)) over the nonzero coefficients.
newton_polygon compute_newton_polygon(const l_polynomial& P);

struct theta_values {
    exact_rational primitivity;  // max_i (i - v_q(c_i))
    exact_rational slopes;       // sum over slopes < 1 of (1 - lambda)
    int value = 0;
};

// Both definitions, asserted equal and integral.
theta_values compute_theta(const l_polynomial& P, const newton_polygon& np);
int theta(const l_polynomial& P);

enum class kodaira_dimension { minus_infinity, zero, one };
std::string to_string(kodaira_dimension k);

struct mu_inputs {
    int theta = 0;
    int a = 0;
    int deg_delta = 0;
    int deg_n = 0;
    int genus = 0;
    int dim_tr = 0;
    bool constant = false;
    // Szpiro d >= 0 is a theorem when j is not a p-th power or the curve is isotrivial.
    bool szpiro_applicable = true;
};

struct mu_report {
    int mu = 0;
    int theta = 0;
    int a = 0;
    exact_rational b, d;
    int deg_delta = 0;
    int deg_n = 0;
    int deg_l = 0;
    int genus = 0;
    int dim_tr = 0;
    kodaira_dimension kodaira_dim = kodaira_dimension::minus_infinity;
    int upper_bound = 0;
    std::map<std::string, bool> checks;

    bool all_checks_pass() const;
    std::vector<std::string> failed_checks() const;
};

// Throws theorem_violation when 12 does not divide deg_delta or mu < 0;
// the remaining identities are recorded in checks.
mu_report compute_mu(const mu_inputs& in);

struct lambda_report {
    int value = 0;
    bool conditional = true;
    // False when the value depends on an undetermined functional-equation sign.
    bool determined = true;
};

// Weierstrass degree of G(T) = sum_i c_i q^(a-i) (1+T)^(a-i) after removing
// its p-content, which must equal e (a - theta).
lambda_report lambda_analytic(const l_polynomial& P, int theta, bool semistable_everywhere);

// mu + (p^mexp - 1) deg_delta / 12, for curves semistable everywhere.
int frobenius_mu_transport(int mu, int deg_delta, int mexp, std::uint64_t p, bool semistable_everywhere);

struct growth_row {
    int n = 0;
    bigint leading;  // mu e p^n + lambda n, up to a bounded offset
};

std::vector<growth_row> growth_table(int mu, int lambda, int e, std::uint64_t p, int n_from, int n_to);

// ceil(d/6) - 1 for y^2 + xy = x^3 - t^d with d = p^n + 1.
int ulmer_expected_mu(std::uint64_t p, int n);
// ceil(d/6) - 1 for y^2 = x^3 + x + t^d with d = (p^nu + 1) / 2, p = 3 mod 4, nu odd.
int shioda_expected_mu(std::uint64_t p, int nu);

}  // namespace ellmu
