#include "ellmu/lfunction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "ellmu/errors.hpp"

namespace ellmu {

namespace {

bigint big_pow(std::uint64_t q, int k) { return ipow(bigint(q), static_cast<unsigned>(k)); }

// alpha^m + beta^m for 1 - a T + Q T^2.
bigint good_trace(std::int64_t a, const bigint& Q, int m) {
    bigint s0 = 2, s1 = a;
    if (m == 0) return s0;
    for (int i = 2; i <= m; ++i) {
        bigint s2 = a * s1 - Q * s0;
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return s1;
}

std::array<ff_elem, 5> reduce_at(const weierstrass_model& m, const field_embedding& emb, ff_elem x) {
    const field_ctx& R = *emb.target();
    std::array<ff_elem, 5> out{};
    for (int i = 0; i < 5; ++i) {
        const auto& f = m.a()[i];
        const ff_elem d = f.den().eval(emb, x);
        if (d == R.zero()) throw theorem_violation("coefficient pole at a place assumed integral");
        out[i] = R.div(f.num().eval(emb, x), d);
    }
    return out;
}

std::vector<int> divisors_of(int k) {
    std::vector<int> out;
    for (int d = 1; d <= k; ++d)
        if (k % d == 0) out.push_back(d);
    return out;
}

}  // namespace

std::string l_polynomial::format(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const bigint& c = coeffs[i];
        if (c == 0) continue;
        bigint mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag;
        } else {
            if (mag != 1) os << mag << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

bool l_polynomial::satisfies_functional_equation() const {
    const int a = degree();
    if (coeffs.empty() || coeffs[0] != 1) return false;
    // c_{a-i} q^{2i} = sign q^a c_i keeps both sides integral.
    for (int i = 0; i <= a; ++i)
        if (coeffs[a - i] * big_pow(q, 2 * i) != sign * coeffs[i] * big_pow(q, a)) return false;
    return true;
}

std::vector<bigint> l_polynomial::power_sums(int k) const {
    std::vector<bigint> p(k + 1, 0);
    auto c = [&](int j) -> bigint { return j < static_cast<int>(coeffs.size()) ? coeffs[j] : bigint(0); };
    for (int n = 1; n <= k; ++n) {
        bigint s = -bigint(n) * c(n);
        for (int i = 1; i < n; ++i) s -= c(i) * p[n - i];
        p[n] = s;
    }
    p.erase(p.begin());
    return p;
}

bigint constant_part::trace_sum(int k, std::uint64_t q) const {
    if (!trace) return 0;
    const bigint t0 = good_trace(*trace, bigint(q), k);
    return t0 + big_pow(q, k) * t0;
}

constant_part make_constant_part(std::optional<std::int64_t> trace, std::uint64_t q) {
    constant_part cp;
    cp.trace = trace;
    if (trace) {
        const bigint a = *trace, Q = q;
        cp.p0 = {1, -a, Q};
        cp.p2 = {1, -a * Q, Q * Q * Q};
    }
    return cp;
}

int expected_degree(int deg_n, int genus, int dim_tr) {
    const int a = deg_n + 4 * (genus - 1) + 4 * dim_tr;
    if (a < 0) throw theorem_violation("negative expected L-degree " + std::to_string(a));
    return a;
}

const local_data* place_survey::find(const place& v) const {
    for (const auto& ld : special)
        if (ld.v == v) return &ld;
    return nullptr;
}

place_survey survey_places(const weierstrass_model& m, int precision_cap) {
    place_survey s;
    s.model = m;
    std::set<place> cand;
    const invariants inv = standard_invariants(m);
    for (const auto& [pi, e] : factor(inv.discriminant.num())) cand.insert(place(pi));
    for (const auto& f : m.a())
        for (const auto& [pi, e] : factor(f.den())) cand.insert(place(pi));
    cand.insert(place::infinity(m.field()));
    for (const auto& v : cand) {
        local_data ld = tate(m, v, precision_cap);
        if (ld.delta != 0) s.discriminant.add(v, ld.delta);
        if (ld.conductor != 0) s.conductor.add(v, ld.conductor);
        if (!ld.semistable()) s.semistable = false;
        s.special.push_back(std::move(ld));
    }
    return s;
}

double power_sum_cost(std::uint64_t q, int k) {
    double cost = 0;
    for (int d : divisors_of(k)) {
        const double qd = std::pow(static_cast<double>(q), d);
        cost += static_cast<double>(count_monic_irreducibles(q, d)) * qd * (1.0 + d);
    }
    return cost;
}

std::string canonical_text(const weierstrass_model& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < 5; ++i) out += (i ? "," : "") + m.a()[i].format();
    out += "]";
    if (!m.F().is_canonical()) {
        out += " mod";
        for (auto c : m.F().modulus()) out += " " + std::to_string(c);
    }
    return out;
}

bigint fiber_sum_closed_places(const place_survey& s, int k, const lfunction_options& opt, trace_cache* cache) {
    if (k < 1) throw input_error("power sum index must be positive");
    const field_ref& F = s.model.field();
    const std::uint64_t q = F->size();
    if (power_sum_cost(q, k) > opt.work_budget)
        throw resource_exhausted("power sum k=" + std::to_string(k) + " exceeds the work budget");

    bigint total = 0;
    std::set<poly> special_polys;
    for (const auto& ld : s.special) {
        if (!ld.v.is_infinite()) special_polys.insert(ld.v.polynomial());
        const int d = ld.v.degree();
        if (k % d == 0) total += d * local_trace(ld, k / d);
    }

    for (int d : divisors_of(k)) {
        const field_extension ext = build_extension(F, d);
        ext.field->tables();
        const bigint Q = big_pow(q, d);
        std::vector<poly> places;
        for_each_monic_irreducible(F, d, [&](const poly& pi) {
            if (!special_polys.count(pi)) places.push_back(pi);
        });
        const int m = k / d;
        auto trace_of = [&](const poly& pi) -> std::int64_t {
            const ff_elem x = smallest_root_of_irreducible(pi, ext.embedding);
            return count_points(*ext.field, reduce_at(s.model, ext.embedding, x)).trace;
        };
        const std::size_t n = places.size();
        if (cache) {
            trace_key key{F->characteristic(), F->degree(), canonical_text(s.model), "", d};
            for (const auto& pi : places) {
                key.place = pi.format();
                auto a = cache->get(key);
                if (!a) {
                    a = trace_of(pi);
                    cache->put(key, *a);
                }
                total += d * good_trace(*a, Q, m);
            }
            continue;
        }
        const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(n / 64) + 1));
        std::vector<bigint> partial(threads);
        std::vector<std::exception_ptr> errs(threads);
        auto work = [&](int t) {
            try {
                for (std::size_t i = n * t / threads; i < n * (t + 1) / threads; ++i)
                    partial[t] += good_trace(trace_of(places[i]), Q, m);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        };
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }
        for (int t = 0; t < threads; ++t) {
            if (errs[t]) std::rethrow_exception(errs[t]);
            total += d * partial[t];
        }
    }
    return total;
}

bigint fiber_sum_rational_points(const place_survey& s, int k) {
    if (k < 1) throw input_error("power sum index must be positive");
    const field_ref& F = s.model.field();
    const field_extension ext = build_extension(F, k);
    const field_ctx& R = *ext.field;
    R.tables();

    auto retest = [&](const place& v) -> std::int64_t {
        const local_data ld = tate(s.model, local_context(v, k / v.degree()));
        switch (ld.reduction) {
            case reduction_kind::good: return *ld.a_v;
            case reduction_kind::split_multiplicative: return 1;
            case reduction_kind::nonsplit_multiplicative: return -1;
            case reduction_kind::additive: return 0;
        }
        return 0;
    };

    std::vector<std::pair<const local_data*, std::optional<std::int64_t>>> finite;
    bigint total = 0;
    for (const auto& ld : s.special) {
        if (ld.v.is_infinite())
            total += retest(ld.v);
        else if (k % ld.v.degree() == 0)
            finite.emplace_back(&ld, std::nullopt);
    }
    for (std::uint64_t xv = 0; xv < R.size(); ++xv) {
        const ff_elem x{xv};
        bool special = false;
        for (auto& [ld, a] : finite) {
            if (ld->v.polynomial().eval(ext.embedding, x) == R.zero()) {
                if (!a) a = retest(ld->v);
                total += *a;
                special = true;
                break;
            }
        }
        if (!special) total += count_points(R, reduce_at(s.model, ext.embedding, x)).trace;
    }
    return total;
}

std::vector<bigint> newton_coefficients(const std::vector<bigint>& p, int n) {
    std::vector<bigint> c(n + 1, 0);
    c[0] = 1;
    for (int k = 1; k <= n; ++k) {
        if (k > static_cast<int>(p.size())) throw input_error("not enough power sums for Newton identities");
        bigint s = 0;
        for (int i = 1; i <= k; ++i) s += p[i - 1] * c[k - i];
        if (s % k != 0) throw theorem_violation("assembly inconsistency: non-integral coefficient c_" + std::to_string(k));
        c[k] = -s / k;
    }
    return c;
}

assembly_result assemble(const std::vector<bigint>& power_sums, int a, std::uint64_t q) {
    assembly_result res;
    if (a < 0) throw input_error("negative L-degree");
    if (a == 0) {
        l_polynomial one;
        one.q = q;
        for (const auto& pk : power_sums)
            if (pk != 0) throw theorem_violation("assembly inconsistency: nonzero power sum for degree 0");
        res.poly = one;
        res.consistent_signs = {1};
        return res;
    }
    const int h = a / 2;
    const auto c = newton_coefficients(power_sums, std::min<int>(h, static_cast<int>(power_sums.size())));
    if (static_cast<int>(c.size()) <= h) throw input_error("not enough power sums for assembly");
    std::vector<l_polynomial> ok;
    for (int sign : {1, -1}) {
        l_polynomial P;
        P.q = q;
        P.sign = sign;
        P.coeffs.assign(a + 1, 0);
        bool valid = true;
        for (int i = 0; i <= h; ++i) P.coeffs[i] = c[i];
        for (int i = 0; a - i > h; ++i) P.coeffs[a - i] = sign * big_pow(q, a - 2 * i) * c[i];
        if (a % 2 == 0 && sign == -1 && c[h] != 0) valid = false;
        if (valid && !P.satisfies_functional_equation()) valid = false;
        if (valid) {
            const auto ps = P.power_sums(static_cast<int>(power_sums.size()));
            valid = ps == power_sums;
        }
        if (valid) {
            ok.push_back(P);
            res.consistent_signs.push_back(sign);
        }
    }
    res.candidates = ok;
    if (ok.empty()) throw theorem_violation("assembly inconsistency: no functional-equation sign fits the power sums");
    if (ok.size() == 1) {
        res.poly = ok.front();
    } else if (ok[0].coeffs == ok[1].coeffs) {
        // Both signs give the same polynomial only if it is identically symmetric;
        // that cannot happen since c_a = sign q^a.
        throw theorem_violation("assembly inconsistency: sign-independent polynomial");
    }
    return res;
}

lfunction_result compute_lfunction(const place_survey& s, int a, const constant_part& cp, const lfunction_options& opt,
                                   trace_cache* cache) {
    lfunction_result out;
    const std::uint64_t q = s.model.field()->size();
    auto next_sum = [&](int k) {
        const bigint S = fiber_sum_closed_places(s, k, opt, cache);
        out.fiber_sums.push_back(S);
        out.power_sums.push_back(cp.trace_sum(k, q) - S);
    };
    const int h = a / 2;
    int K = 0;
    std::optional<l_polynomial> poly;
    if (a == 0) {
        l_polynomial one;
        one.q = q;
        poly = one;
    } else {
        while (K < h + 1) next_sum(++K);
        for (;;) {
            assembly_result r = assemble(out.power_sums, a, q);
            if (r.poly) {
                poly = r.poly;
                break;
            }
            if (K >= a) throw theorem_violation("assembly inconsistency: sign undetermined with all power sums");
            if (opt.allow_sign_ambiguity && power_sum_cost(q, K + 1) > opt.work_budget) {
                out.sign_determined = false;
                poly = r.candidates[0];
                out.alternate = r.candidates[1];
                break;
            }
            next_sum(++K);
        }
    }
    for (int j = 1; j <= opt.verify_extra; ++j) {
        const int k = K + 1;
        if (power_sum_cost(q, k) > opt.verify_budget) break;
        next_sum(++K);
        ++out.verified_extra;
        const bool fits = poly->power_sums(K) == out.power_sums;
        if (!out.sign_determined) {
            const bool alt_fits = out.alternate->power_sums(K) == out.power_sums;
            if (fits && alt_fits) continue;
            if (alt_fits) std::swap(*poly, *out.alternate);
            if (fits || alt_fits) {
                out.sign_determined = true;
                out.alternate.reset();
                continue;
            }
        }
        if (!fits) {
            out.verification_ok = false;
            throw theorem_violation("L-polynomial verification failed at k=" + std::to_string(K) + ": expected " +
                                    poly->power_sums(K).back().str() + ", counted " + out.power_sums.back().str());
        }
    }
    out.poly = *poly;
    return out;
}

l_polynomial base_change_product(const l_polynomial& x, const l_polynomial& y) {
    if (x.q != y.q) throw input_error("L-polynomials over different constant fields");
    l_polynomial r;
    r.q = x.q;
    r.sign = x.sign * y.sign;
    r.coeffs.assign(x.coeffs.size() + y.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < x.coeffs.size(); ++i)
        for (std::size_t j = 0; j < y.coeffs.size(); ++j) r.coeffs[i + j] += x.coeffs[i] * y.coeffs[j];
    if (!r.satisfies_functional_equation()) throw theorem_violation("product lost the functional equation");
    return r;
}

}  // namespace ellmu
