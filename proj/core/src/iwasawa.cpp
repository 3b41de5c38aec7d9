#include "ellmu/iwasawa.hpp"

#include <algorithm>

#include "ellmu/errors.hpp"
#include "ellmu/finite_field.hpp"

namespace ellmu {

std::pair<std::uint64_t, int> prime_power(std::uint64_t q) {
    const auto ps = prime_factors(q);
    if (ps.size() != 1) throw input_error("not a prime power: " + std::to_string(q));
    int e = 0;
    for (std::uint64_t r = q; r > 1; r /= ps[0]) ++e;
    return {ps[0], e};
}

exact_rational q_valuation(const bigint& c, std::uint64_t q) {
    if (c == 0) throw input_error("q-valuation of zero");
    const auto [p, e] = prime_power(q);
    return exact_rational(padic_valuation(c, p), e);
}

bool newton_polygon::vertices_integral() const {
    return std::all_of(vertices.begin(), vertices.end(), [](const auto& v) { return v.second.is_integer(); });
}

bool newton_polygon::symmetric() const {
    std::vector<exact_rational> s, r;
    for (const auto& [lam, mult] : slopes)
        for (int i = 0; i < mult; ++i) {
            s.push_back(lam);
            r.push_back(exact_rational(2) - lam);
        }
    std::sort(r.begin(), r.end());
    return s == r;
}

int newton_polygon::length() const {
    int n = 0;
    for (const auto& sl : slopes) n += sl.second;
    return n;
}

newton_polygon compute_newton_polygon(const l_polynomial& P) {
    std::vector<std::pair<int, exact_rational>> pts;
    for (int i = 0; i <= P.degree(); ++i)
        if (P.coeffs[i] != 0) pts.emplace_back(i, q_valuation(P.coeffs[i], P.q));
    std::vector<std::pair<int, exact_rational>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& a = hull.back();
            const exact_rational cross = exact_rational(a.first - o.first) * (pt.second - o.second) -
                                         (a.second - o.second) * exact_rational(pt.first - o.first);
            if (cross <= exact_rational(0))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    newton_polygon np;
    np.vertices = hull;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const int dx = hull[i].first - hull[i - 1].first;
        np.slopes.emplace_back((hull[i].second - hull[i - 1].second) / exact_rational(dx), dx);
    }
    return np;
}

theta_values compute_theta(const l_polynomial& P, const newton_polygon& np) {
    theta_values t;
    t.primitivity = 0;
    for (int i = 0; i <= P.degree(); ++i)
        if (P.coeffs[i] != 0) t.primitivity = std::max(t.primitivity, exact_rational(i) - q_valuation(P.coeffs[i], P.q));
    t.slopes = 0;
    for (const auto& [lam, mult] : np.slopes)
        if (lam < exact_rational(1)) t.slopes += (exact_rational(1) - lam) * exact_rational(mult);
    check_theorem(t.primitivity == t.slopes,
                  "theta mismatch: primitivity " + t.primitivity.str() + " vs slopes " + t.slopes.str());
    check_theorem(t.primitivity.is_integer(), "theta not integral: " + t.primitivity.str());
    t.value = static_cast<int>(t.primitivity.numerator());
    return t;
}

int theta(const l_polynomial& P) {
    const newton_polygon np = compute_newton_polygon(P);
    check_theorem(np.vertices_integral(), "Newton polygon vertex off the integer lattice");
    return compute_theta(P, np).value;
}

std::string to_string(kodaira_dimension k) {
    switch (k) {
        case kodaira_dimension::minus_infinity: return "-inf";
        case kodaira_dimension::zero: return "0";
        case kodaira_dimension::one: return "1";
    }
    return "?";
}

bool mu_report::all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

std::vector<std::string> mu_report::failed_checks() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : checks)
        if (!v) out.push_back(k);
    return out;
}

mu_report compute_mu(const mu_inputs& in) {
    if (in.deg_delta % 12 != 0)
        throw theorem_violation("deg(Delta) = " + std::to_string(in.deg_delta) + " is not divisible by 12");
    mu_report r;
    r.theta = in.theta;
    r.a = in.a;
    r.deg_delta = in.deg_delta;
    r.deg_n = in.deg_n;
    r.deg_l = in.deg_delta / 12;
    r.genus = in.genus;
    r.dim_tr = in.dim_tr;
    r.mu = in.constant ? in.genus - in.theta : r.deg_l + in.genus - 1 - in.theta;
    if (r.mu < 0) throw theorem_violation("negative mu = " + std::to_string(r.mu));
    r.b = exact_rational(in.a, 2) - exact_rational(in.theta);
    r.d = exact_rational(in.deg_n, 2) + exact_rational(in.genus - 1 + in.dim_tr) - exact_rational(r.deg_l);
    r.upper_bound = r.deg_l + in.genus - 1 + in.dim_tr;
    const int kd = r.deg_l + 2 * in.genus - 2;
    r.kodaira_dim = kd < 0 ? kodaira_dimension::minus_infinity : kd == 0 ? kodaira_dimension::zero : kodaira_dimension::one;

    r.checks["delta_divisible_by_12"] = true;
    r.checks["mu_nonneg"] = true;
    r.checks["mu_le_upper_bound"] = r.mu <= r.upper_bound;
    r.checks["mu_eq_b_minus_d"] = exact_rational(r.mu) == r.b - r.d;
    r.checks["theta_le_half_a"] = exact_rational(2 * in.theta) <= exact_rational(in.a);
    r.checks["szpiro_nonneg"] = !in.szpiro_applicable || r.d >= exact_rational(0);
    return r;
}

lambda_report lambda_analytic(const l_polynomial& P, int theta, bool semistable_everywhere) {
    lambda_report rep;
    rep.conditional = !semistable_everywhere;
    const int a = P.degree();
    if (a == 0) return rep;
    const auto [p, e] = prime_power(P.q);
    // G(T) = sum_i c_i q^(a-i) (1+T)^(a-i), binomials built row by row.
    std::vector<bigint> g(a + 1, 0);
    std::vector<bigint> binom{1};
    for (int n = 0; n <= a; ++n) {
        if (n > 0) {
            std::vector<bigint> next(n + 1, 1);
            for (int j = 1; j < n; ++j) next[j] = binom[j - 1] + binom[j];
            binom = std::move(next);
        }
        const int i = a - n;
        const bigint w = P.coeffs[i] * ipow(bigint(P.q), static_cast<unsigned>(n));
        if (w == 0) continue;
        for (int j = 0; j <= n; ++j) g[j] += w * binom[j];
    }
    int content = std::numeric_limits<int>::max();
    for (const auto& gi : g)
        if (gi != 0) content = std::min(content, padic_valuation(gi, p));
    check_theorem(content == e * (a - theta), "lambda content check failed: v_p content " + std::to_string(content) +
                                                  " vs e(a - theta) = " + std::to_string(e * (a - theta)));
    for (int j = 0; j <= a; ++j)
        if (g[j] != 0 && padic_valuation(g[j], p) == content) {
            rep.value = j;
            break;
        }
    check_theorem(rep.value <= a, "lambda exceeds the L-degree");
    return rep;
}

int frobenius_mu_transport(int mu, int deg_delta, int mexp, std::uint64_t p, bool semistable_everywhere) {
    if (!semistable_everywhere) throw input_error("Frobenius transport of mu needs semistable reduction everywhere");
    if (mexp < 0) throw input_error("negative Frobenius exponent");
    if (deg_delta % 12 != 0) throw input_error("deg(Delta) not divisible by 12");
    const std::uint64_t pm = checked_pow(p, static_cast<std::uint64_t>(mexp), std::uint64_t{1} << 40);
    return mu + static_cast<int>((pm - 1) * static_cast<std::uint64_t>(deg_delta / 12));
}

std::vector<growth_row> growth_table(int mu, int lambda, int e, std::uint64_t p, int n_from, int n_to) {
    std::vector<growth_row> rows;
    for (int n = n_from; n <= n_to; ++n)
        rows.push_back({n, bigint(mu) * e * ipow(bigint(p), static_cast<unsigned>(n)) + bigint(lambda) * n});
    return rows;
}

namespace {
int ceil_sixth_minus_one(std::uint64_t d) { return static_cast<int>((d + 5) / 6) - 1; }
}  // namespace

int ulmer_expected_mu(std::uint64_t p, int n) {
    if (!is_prime(p) || n < 1) throw input_error("Ulmer family needs a prime p and n >= 1");
    return ceil_sixth_minus_one(checked_pow(p, n) + 1);
}

int shioda_expected_mu(std::uint64_t p, int nu) {
    if (!is_prime(p) || p % 4 != 3 || nu < 1 || nu % 2 == 0)
        throw input_error("Shioda family needs a prime p = 3 mod 4 and odd nu");
    return ceil_sixth_minus_one((checked_pow(p, nu) + 1) / 2);
}

}  // namespace ellmu
