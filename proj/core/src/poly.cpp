#include "ellmu/poly.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "ellmu/errors.hpp"

namespace ellmu {

namespace {

void require_same_field(const poly& a, const poly& b) {
    if (!a.field() || !b.field()) throw input_error("polynomial without a field");
    if (a.field() != b.field() && !a.field()->same_as(*b.field()))
        throw input_error("polynomials over different fields");
}

}  // namespace

poly::poly(field_ref f, std::vector<ff_elem> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
    for (auto& c : c_)
        if (c.v >= field_->size()) throw input_error("coefficient outside field");
    normalize();
}

void poly::normalize() {
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
}

poly poly::constant(field_ref f, ff_elem c) { return poly(std::move(f), {c}); }

poly poly::monomial(field_ref f, ff_elem c, std::size_t k) {
    std::vector<ff_elem> v(k + 1, ff_elem{0});
    v[k] = c;
    return poly(std::move(f), std::move(v));
}

poly poly::from_ints(field_ref f, const std::vector<std::int64_t>& coeffs) {
    std::vector<ff_elem> v;
    v.reserve(coeffs.size());
    for (auto c : coeffs) v.push_back(f->from_int(c));
    return poly(std::move(f), std::move(v));
}

poly poly::monic() const {
    if (is_zero()) throw input_error("zero polynomial has no monic associate");
    return scale(F().inv(leading()));
}

poly poly::scale(ff_elem c) const {
    std::vector<ff_elem> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F().mul(c_[i], c);
    return poly(field_, std::move(v));
}

poly poly::derivative() const {
    if (c_.size() <= 1) return poly(field_);
    std::vector<ff_elem> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = F().scale(c_[i], static_cast<std::int64_t>(i % F().characteristic()));
    return poly(field_, std::move(v));
}

ff_elem poly::eval(ff_elem x) const {
    ff_elem acc{0};
    for (std::size_t i = c_.size(); i-- > 0;) acc = F().add(F().mul(acc, x), c_[i]);
    return acc;
}

ff_elem poly::eval(const field_embedding& emb, ff_elem x) const {
    const field_ctx& T = *emb.target();
    ff_elem acc{0};
    for (std::size_t i = c_.size(); i-- > 0;) acc = T.add(T.mul(acc, x), emb(c_[i]));
    return acc;
}

poly poly::pow(std::uint64_t k) const {
    poly r = constant(field_, F().one());
    poly b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

poly poly::inflate(std::uint32_t k) const {
    if (c_.empty()) return *this;
    std::vector<ff_elem> v((c_.size() - 1) * k + 1, ff_elem{0});
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return poly(field_, std::move(v));
}

poly poly::frobenius_power(std::uint32_t k) const {
    std::vector<ff_elem> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F().frobenius(c_[i], k);
    const std::uint64_t pk = checked_pow(F().characteristic(), k, std::uint64_t{1} << 20);
    return poly(field_, std::move(v)).inflate(static_cast<std::uint32_t>(pk));
}

poly poly::reversed(std::size_t nominal_degree) const {
    if (degree() > static_cast<int>(nominal_degree)) throw input_error("nominal degree below actual degree");
    std::vector<ff_elem> v(nominal_degree + 1, ff_elem{0});
    for (std::size_t i = 0; i < c_.size(); ++i) v[nominal_degree - i] = c_[i];
    return poly(field_, std::move(v));
}

int poly::multiplicity(const poly& g) const {
    if (is_zero()) throw input_error("multiplicity in the zero polynomial");
    if (g.degree() < 1) throw input_error("multiplicity of a constant");
    int m = 0;
    poly cur = *this;
    while (true) {
        auto [q, r] = divmod(cur, g);
        if (!r.is_zero()) return m;
        cur = std::move(q);
        ++m;
    }
}

std::string poly::format(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k].v == 0) continue;
        std::string c = F().format(c_[k]);
        if (c.find('+') != std::string::npos && k > 0) c = "(" + c + ")";
        if (!first) os << '+';
        first = false;
        if (k == 0) {
            os << c;
            continue;
        }
        if (c != "1") os << c << '*';
        os << var;
        if (k > 1) os << '^' << k;
    }
    return os.str();
}

poly operator+(const poly& a, const poly& b) {
    require_same_field(a, b);
    const auto& F = a.F();
    std::vector<ff_elem> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(a.coeff(i), b.coeff(i));
    return poly(a.field_, std::move(v));
}

poly poly::operator-() const {
    std::vector<ff_elem> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F().neg(c_[i]);
    return poly(field_, std::move(v));
}

poly operator-(const poly& a, const poly& b) { return a + (-b); }

poly operator*(const poly& a, const poly& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return poly(a.field_);
    const auto& F = a.F();
    std::vector<ff_elem> v(a.c_.size() + b.c_.size() - 1, ff_elem{0});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].v == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = F.add(v[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    return poly(a.field_, std::move(v));
}

bool operator<(const poly& a, const poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::pair<poly, poly> divmod(const poly& a, const poly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw input_error("polynomial division by zero");
    const auto& F = a.F();
    if (a.degree() < b.degree()) return {poly(a.field()), a};
    std::vector<ff_elem> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<ff_elem> q(r.size() - db, ff_elem{0});
    const ff_elem lead_inv = F.inv(bc.back());
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i].v == 0) continue;
        const ff_elem c = F.mul(r[i], lead_inv);
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]));
    }
    r.resize(db);
    return {poly(a.field(), std::move(q)), poly(a.field(), std::move(r))};
}

poly operator/(const poly& a, const poly& b) { return divmod(a, b).first; }
poly operator%(const poly& a, const poly& b) { return divmod(a, b).second; }

poly gcd(const poly& a_in, const poly& b_in) {
    poly a = a_in, b = b_in;
    while (!b.is_zero()) {
        poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

poly powmod(poly base, const bigint& e, const poly& m) {
    poly r = poly::constant(m.field(), m.F().one()) % m;
    base = base % m;
    if (e == 0) return r;
    const unsigned top = boost::multiprecision::msb(e);
    for (unsigned i = top + 1; i-- > 0;) {
        r = (r * r) % m;
        if (boost::multiprecision::bit_test(e, i)) r = (r * base) % m;
    }
    return r;
}

poly map_coeffs(const poly& f, const field_embedding& emb) {
    std::vector<ff_elem> v(f.coeffs().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = emb(f.coeffs()[i]);
    return poly(emb.target(), std::move(v));
}

namespace {

// x^(q^k) mod f, iterated
poly frobenius_step(const poly& h, const poly& f) { return powmod(h, bigint(f.F().size()), f); }

void sqf_rec(const poly& f, int mult, std::vector<std::pair<poly, int>>& out) {
    const auto& F = f.F();
    poly c = gcd(f, f.derivative());
    poly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        poly y = gcd(w, c);
        poly z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) {
        const std::uint32_t p = F.characteristic();
        std::vector<ff_elem> root(c.degree() / p + 1);
        for (std::size_t k = 0; k < root.size(); ++k) root[k] = F.pth_root(c.coeff(k * p));
        sqf_rec(poly(f.field(), std::move(root)).monic(), mult * static_cast<int>(p), out);
    }
}

std::vector<std::pair<poly, std::uint32_t>> distinct_degree(poly f) {
    std::vector<std::pair<poly, std::uint32_t>> out;
    const poly x = poly::variable(f.field());
    poly h = x % f;
    for (std::uint32_t i = 1; f.degree() >= 2 * static_cast<int>(i); ++i) {
        h = frobenius_step(h, f);
        poly g = gcd(f, h - x);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f.monic(), static_cast<std::uint32_t>(f.degree()));
    return out;
}

// A proper monic factor of g, a product of distinct irreducibles of degree d.
poly split_once(const poly& g, std::uint32_t d, std::mt19937_64& rng) {
    const auto& F = g.F();
    const bigint qd = boost::multiprecision::pow(bigint(F.size()), d);
    while (true) {
        std::vector<ff_elem> a(g.degree());
        for (auto& c : a) c = F.random(rng);
        poly ap(g.field(), std::move(a));
        if (ap.degree() < 1) continue;
        poly b;
        if (F.characteristic() == 2) {
            const std::uint64_t steps = static_cast<std::uint64_t>(F.degree()) * d;
            poly cur = ap % g;
            b = cur;
            for (std::uint64_t i = 1; i < steps; ++i) {
                cur = (cur * cur) % g;
                b = b + cur;
            }
        } else {
            b = powmod(ap, (qd - 1) / 2, g) - poly::constant(g.field(), F.one());
        }
        poly u = gcd(g, b);
        if (u.degree() > 0 && u.degree() < g.degree()) return u;
    }
}

void equal_degree(const poly& g, std::uint32_t d, std::mt19937_64& rng, std::vector<poly>& out) {
    if (g.degree() == static_cast<int>(d)) {
        out.push_back(g.monic());
        return;
    }
    const poly u = split_once(g, d, rng);
    equal_degree(u, d, rng, out);
    equal_degree(g / u, d, rng, out);
}

}  // namespace

bool is_irreducible(const poly& f_in) {
    if (f_in.degree() < 1) return false;
    if (f_in.degree() == 1) return true;
    const poly f = f_in.monic();
    const auto n = static_cast<std::uint32_t>(f.degree());
    const poly x = poly::variable(f.field());
    std::vector<poly> frob(n + 1);
    frob[0] = x % f;
    for (std::uint32_t i = 1; i <= n; ++i) frob[i] = frobenius_step(frob[i - 1], f);
    if (!(frob[n] == frob[0])) return false;
    for (std::uint64_t r : prime_factors(n))
        if (gcd(f, frob[n / r] - x).degree() != 0) return false;
    return true;
}

std::vector<std::pair<poly, int>> squarefree_decomposition(const poly& f) {
    std::vector<std::pair<poly, int>> out;
    if (f.degree() <= 0) return out;
    sqf_rec(f.monic(), 1, out);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

std::vector<std::pair<poly, int>> factor(const poly& f) {
    if (f.is_zero()) throw input_error("cannot factor the zero polynomial");
    std::vector<std::pair<poly, int>> out;
    std::mt19937_64 rng(0x5eedULL);
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        for (const auto& [g, d] : distinct_degree(part)) {
            std::vector<poly> irr;
            equal_degree(g, d, rng, irr);
            for (auto& h : irr) out.emplace_back(std::move(h), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<ff_elem> roots(const poly& f) {
    if (f.is_zero()) throw input_error("roots of the zero polynomial");
    std::vector<ff_elem> out;
    if (f.degree() < 1) return out;
    const auto& F = f.F();
    if (F.size() < (std::uint64_t{1} << 16)) {
        for (std::uint64_t v = 0; v < F.size(); ++v)
            if (f.eval(ff_elem{v}).v == 0) out.push_back(ff_elem{v});
        return out;
    }
    const poly fm = f.monic();
    const poly x = poly::variable(f.field());
    poly g = gcd(fm, frobenius_step(x % fm, fm) - x);
    if (g.degree() < 1) return out;
    std::mt19937_64 rng(0x5eedULL);
    std::vector<poly> lin;
    equal_degree(g, 1, rng, lin);
    for (const auto& l : lin) out.push_back(F.neg(l.coeff(0)));
    std::sort(out.begin(), out.end());
    return out;
}

ff_elem smallest_root_of_irreducible(const poly& f, const field_embedding& emb) {
    const field_ctx& R = *emb.target();
    poly g = map_coeffs(f, emb).monic();
    if (g.degree() < 1) throw input_error("constant polynomial has no roots");
    if (R.size() < (std::uint64_t{1} << 16)) {
        const auto r = roots(g);
        if (r.empty()) throw theorem_violation("irreducible polynomial has no root in the target field");
        return r.front();
    }
    // One branch of the equal-degree split, then the Frobenius orbit of that root.
    std::mt19937_64 rng(0x5eedULL);
    while (g.degree() > 1) {
        poly u = split_once(g, 1, rng);
        g = 2 * u.degree() <= g.degree() ? u : g / u;
        g = g.monic();
    }
    const ff_elem r = R.neg(g.coeff(0));
    const auto k = static_cast<std::uint32_t>(emb.source()->degree());
    ff_elem best = r;
    for (int i = 1; i < f.degree(); ++i) best = std::min(best, R.frobenius(r, k * i));
    return best;
}

std::uint64_t count_monic_irreducibles(std::uint64_t q, std::uint32_t d) {
    auto mobius = [](std::uint64_t n) {
        int m = 1;
        for (std::uint64_t r = 2; r * r <= n; ++r) {
            if (n % r) continue;
            n /= r;
            if (n % r == 0) return 0;
            m = -m;
        }
        if (n > 1) m = -m;
        return m;
    };
    __int128 total = 0;
    for (std::uint32_t k = 1; k <= d; ++k) {
        if (d % k) continue;
        total += static_cast<__int128>(mobius(k)) * static_cast<__int128>(checked_pow(q, d / k));
    }
    return static_cast<std::uint64_t>(total / d);
}

void for_each_monic_irreducible(const field_ref& f, std::uint32_t d, const std::function<void(const poly&)>& fn,
                                std::uint64_t cap) {
    if (d == 0) throw input_error("place degree must be positive");
    const std::uint64_t q = f->size();
    const std::uint64_t total = checked_pow(q, d, cap);
    std::vector<ff_elem> c(d + 1, ff_elem{0});
    c[d] = f->one();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t v = idx;
        for (std::uint32_t i = 0; i < d; ++i) {
            c[i] = ff_elem{v % q};
            v /= q;
        }
        if (d > 1 && c[0].v == 0) continue;
        poly g(f, c);
        if (is_irreducible(g)) fn(g);
    }
}

std::vector<poly> enumerate_monic_irreducibles(const field_ref& f, std::uint32_t d, std::uint64_t cap) {
    std::vector<poly> out;
    for_each_monic_irreducible(f, d, [&](const poly& g) { out.push_back(g); }, cap);
    return out;
}

field_extension build_extension(const field_ref& base, std::uint32_t d) {
    if (d == 0) throw input_error("extension degree must be positive");
    const std::uint32_t n = base->degree() * d;
    checked_pow(base->characteristic(), n);
    field_ref target = field_ctx::canonical(base->characteristic(), n);
    if (target.get() == base.get()) return {target, field_embedding::identity(target)};
    std::vector<ff_elem> m;
    for (auto c : base->modulus()) m.push_back(target->from_int(c));
    const auto r = roots(poly(target, std::move(m)));
    if (r.empty()) throw theorem_violation("base modulus has no root in the extension");
    return {target, field_embedding(base, target, r.front())};
}

}  // namespace ellmu
