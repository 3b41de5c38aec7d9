#include "ellmu/survey.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "ellmu/errors.hpp"

namespace ellmu {

namespace {

constexpr int kInfiniteOrder = 1 << 20;

int order_at_infinity(const poly& g, int weight) { return g.is_zero() ? kInfiniteOrder : weight - g.degree(); }

poly random_poly(const field_ref& f, int max_degree, std::mt19937_64& rng) {
    std::vector<ff_elem> c(max_degree + 1);
    for (auto& x : c) x = f->random(rng);
    return poly(f, std::move(c));
}

}  // namespace

validity validate(const moduli_point& pt) {
    const field_ref& f = pt.g2.field() ? pt.g2.field() : pt.g3.field();
    if (!f) throw input_error("moduli point without a field");
    if (f->characteristic() <= 3) throw input_error("moduli points need characteristic > 3");
    validity out;
    if (pt.n < 1) throw input_error("n must be positive");
    if (pt.g2.degree() > 4 * pt.n || pt.g3.degree() > 6 * pt.n) throw input_error("g2 or g3 exceeds its degree bound");
    const poly disc = poly::from_ints(f, {4}) * pt.g2.pow(3) - poly::from_ints(f, {27}) * pt.g3.pow(2);
    if (disc.is_zero()) {
        out.reason = "4 g2^3 - 27 g3^2 vanishes";
        return out;
    }
    // Both orders large at a finite place means ord g2 >= 4 and ord g3 >= 6.
    const poly common = pt.g2.is_zero() ? pt.g3 : pt.g3.is_zero() ? pt.g2 : gcd(pt.g2, pt.g3);
    if (common.degree() > 0) {
        for (const auto& [pi, e] : factor(common)) {
            const int o2 = pt.g2.is_zero() ? kInfiniteOrder : pt.g2.multiplicity(pi);
            const int o3 = pt.g3.is_zero() ? kInfiniteOrder : pt.g3.multiplicity(pi);
            if (std::min(3 * o2, 2 * o3) >= 12) {
                out.failing = place(pi);
                out.reason = "min(3 ord g2, 2 ord g3) >= 12 at " + pi.format();
                return out;
            }
        }
    }
    const int o2 = order_at_infinity(pt.g2, 4 * pt.n), o3 = order_at_infinity(pt.g3, 6 * pt.n);
    if (std::min(3 * o2, 2 * o3) >= 12) {
        out.failing = place::infinity(f);
        out.reason = "min(3 ord g2, 2 ord g3) >= 12 at inf";
        return out;
    }
    out.valid = true;
    return out;
}

weierstrass_model moduli_curve(const moduli_point& pt) {
    const field_ref& f = pt.g2.field() ? pt.g2.field() : pt.g3.field();
    const rational_function zero(f);
    return weierstrass_model(zero, zero, zero, -rational_function(pt.g2), -rational_function(pt.g3));
}

double survey_result::mu_zero_fraction() const {
    if (records.empty()) return 0;
    int zero = 0;
    for (const auto& r : records)
        if (r.mu && *r.mu == 0) ++zero;
    return static_cast<double>(zero) / static_cast<double>(records.size());
}

int theta_prefix_bound(const std::vector<bigint>& power_sums, std::uint64_t q) {
    const int k = static_cast<int>(power_sums.size());
    if (k == 0) return 0;
    const auto c = newton_coefficients(power_sums, k);
    exact_rational best = 0;
    for (int i = 1; i <= k; ++i)
        if (c[i] != 0) best = std::max(best, exact_rational(i) - q_valuation(c[i], q));
    bigint fl = best.floor();
    if (exact_rational::from_int(fl) != best) fl += 1;
    return static_cast<int>(fl);
}

survey_record evaluate_point(const moduli_point& pt, const survey_options& opt, int index) {
    survey_record rec;
    rec.index = index;
    rec.point = pt;
    try {
        const weierstrass_model m = moduli_curve(pt);
        analysis_options aopt;
        aopt.precision_cap = opt.precision_cap;
        aopt.lf.work_budget = opt.point_budget;
        aopt.lf.verify_budget = opt.point_budget / 4;
        aopt.lf.verify_extra = 1;
        const place_survey places = survey_places(m, opt.precision_cap);
        rec.deg_delta = places.discriminant.degree();
        rec.deg_delta_ok = rec.deg_delta == 12 * pt.n;
        const std::uint64_t q = m.field()->size();
        const constancy cls = detect_constancy(m);
        const int dim_tr = cls.kind == constancy_kind::constant ? 1 : 0;
        rec.a = expected_degree(places.conductor.degree(), 0, dim_tr);
        const int h = rec.a / 2;
        if (rec.a == 0 || power_sum_cost(q, h + 1) <= opt.point_budget) {
            try {
                const analysis full = analyze(m, aopt);
                rec.full_lfunction = true;
                rec.mu = full.mu().mu;
                rec.theta_lower_bound = full.mu().theta;
                rec.power_sums_used = static_cast<int>(full.L.power_sums.size());
                rec.report = full.mu();
                return rec;
            } catch (const resource_exhausted&) {
                // The sign needed more power sums than the budget allows; theta only needs c_1..c_h.
            }
        }
        // theta <= deg Delta / 12 - 1 since mu >= 0; stop once the prefix bound reaches it.
        const int theta_max = rec.deg_delta / 12 - 1;
        std::vector<bigint> ps;
        const constant_part cp = make_constant_part(std::nullopt, q);
        for (int k = 1; k <= h && power_sum_cost(q, k) <= opt.point_budget; ++k) {
            ps.push_back(cp.trace_sum(k, q) - fiber_sum_closed_places(places, k, aopt.lf));
            rec.power_sums_used = k;
            rec.theta_lower_bound = theta_prefix_bound(ps, q);
            check_theorem(rec.theta_lower_bound <= theta_max, "theta lower bound exceeds deg(Delta)/12 - 1");
            if (rec.theta_lower_bound == theta_max) break;
        }
        if (rec.theta_lower_bound == theta_max || rec.power_sums_used == h)
            rec.mu = rec.deg_delta / 12 - 1 - rec.theta_lower_bound;
    } catch (const resource_exhausted& e) {
        rec.error = std::string("resource: ") + e.what();
    } catch (const theorem_violation& e) {
        rec.error = std::string("theorem: ") + e.what();
    }
    return rec;
}

survey_result scan(const survey_options& opt) {
    if (opt.n < 1) throw input_error("n must be positive");
    const auto ps = prime_factors(opt.q);
    if (ps.size() != 1) throw input_error("q must be a prime power");
    std::uint32_t e = 0;
    for (std::uint64_t r = opt.q; r > 1; r /= ps[0]) ++e;
    const field_ref f = field_ctx::canonical(static_cast<std::uint32_t>(ps[0]), e);
    if (f->characteristic() <= 3) throw input_error("survey needs characteristic > 3");

    survey_result res;
    res.options = opt;
    std::vector<moduli_point> points;
    const int d2 = 4 * opt.n, d3 = 6 * opt.n;
    if (opt.exhaustive) {
        const double total = std::pow(static_cast<double>(opt.q), d2 + d3 + 2);
        if (total > static_cast<double>(1 << 24)) throw resource_exhausted("exhaustive survey exceeds 2^24 points");
        const auto count = static_cast<std::uint64_t>(total);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t r = idx;
            std::vector<ff_elem> c2(d2 + 1), c3(d3 + 1);
            for (auto& x : c2) x = ff_elem{r % opt.q}, r /= opt.q;
            for (auto& x : c3) x = ff_elem{r % opt.q}, r /= opt.q;
            moduli_point pt{opt.n, poly(f, c2), poly(f, c3)};
            ++res.attempts;
            if (validate(pt).valid)
                points.push_back(std::move(pt));
            else
                ++res.rejected;
        }
    } else {
        std::mt19937_64 rng(opt.seed);
        const long long cap = static_cast<long long>(opt.samples) * opt.max_attempts_factor;
        while (static_cast<int>(points.size()) < opt.samples) {
            if (res.attempts >= cap) {
                res.partial = true;
                break;
            }
            ++res.attempts;
            moduli_point pt{opt.n, random_poly(f, d2, rng), random_poly(f, d3, rng)};
            if (validate(pt).valid)
                points.push_back(std::move(pt));
            else
                ++res.rejected;
        }
    }

    res.records.resize(points.size());
    const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(points.size())));
    auto work = [&](int t) {
        for (std::size_t i = t; i < points.size(); i += threads) res.records[i] = evaluate_point(points[i], opt, static_cast<int>(i));
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (const auto& r : res.records) {
        if (!r.error.empty() && r.error.rfind("theorem", 0) == 0)
            ++res.histogram["error"];
        else if (r.mu)
            ++res.histogram[std::to_string(*r.mu)];
        else {
            ++res.histogram["undetermined"];
            res.partial = true;
        }
    }
    return res;
}

}  // namespace ellmu
