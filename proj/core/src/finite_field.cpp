#include "ellmu/finite_field.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <sstream>

#include "ellmu/errors.hpp"

namespace ellmu {

namespace {

constexpr std::uint64_t kEagerTableCap = std::uint64_t{1} << 12;
constexpr std::size_t kMaxDigits = 64;

using digit_buf = std::array<std::uint64_t, 2 * kMaxDigits>;

// ---- dense F_p[x] helpers (low coefficient first), used for moduli ----

using zp_poly = std::vector<std::uint64_t>;

void trim(zp_poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

zp_poly zp_mod(zp_poly a, const zp_poly& m, std::uint64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j)
            a[shift + j] = (a[shift + j] + (p - c) * m[j]) % p;
        trim(a);
    }
    return a;
}

zp_poly zp_mulmod(const zp_poly& a, const zp_poly& b, const zp_poly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    zp_poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return zp_mod(std::move(r), m, p);
}

zp_poly zp_powmod(zp_poly base, std::uint64_t e, const zp_poly& m, std::uint64_t p) {
    zp_poly r{1};
    base = zp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = zp_mulmod(r, base, m, p);
        e >>= 1;
        if (e) base = zp_mulmod(base, base, m, p);
    }
    return r;
}

zp_poly zp_gcd(zp_poly a, zp_poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = zp_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

}  // namespace

// ---------------------------------------------------------------- integers

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base)
            throw resource_exhausted("size " + std::to_string(base) + "^" + std::to_string(exp) +
                                     " exceeds the enumeration cap");
        r *= base;
    }
    return r;
}

bool is_irreducible_mod_p(std::span<const std::uint32_t> f_in, std::uint32_t p) {
    zp_poly f(f_in.begin(), f_in.end());
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t n = f.size() - 1;
    if (n == 1) return true;
    // x^(p^i) mod f for i = 0..n
    std::vector<zp_poly> frob(n + 1);
    frob[0] = zp_mod(zp_poly{0, 1}, f, p);
    for (std::size_t i = 1; i <= n; ++i) frob[i] = zp_powmod(frob[i - 1], p, f, p);
    zp_poly x = zp_mod(zp_poly{0, 1}, f, p);
    if (frob[n] != x) return false;
    for (std::uint64_t r : prime_factors(n)) {
        zp_poly h = frob[n / r];
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        if (h.empty()) return false;
        if (zp_gcd(f, h, p).size() != 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------- field_ctx

field_ctx::field_ctx(std::uint32_t p, std::vector<std::uint32_t> modulus, bool canonical)
    : p_(p), modulus_(std::move(modulus)), canonical_(canonical) {
    n_ = static_cast<std::uint32_t>(modulus_.size() - 1);
    q_ = checked_pow(p_, n_);
    pow_p_.resize(n_ + 1);
    pow_p_[0] = 1;
    for (std::uint32_t i = 1; i <= n_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;
}

field_ref field_ctx::canonical(std::uint32_t p, std::uint32_t n) {
    if (!is_prime(p)) throw input_error("field characteristic " + std::to_string(p) + " is not prime");
    if (n == 0) throw input_error("field degree must be positive");
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, field_ref> registry;
    std::lock_guard lock(mu);
    if (auto it = registry.find({p, n}); it != registry.end()) return it->second;

    const std::uint64_t q = checked_pow(p, n);
    std::vector<std::uint32_t> m(n + 1, 0);
    m[n] = 1;
    if (n > 1) {
        bool found = false;
        for (std::uint64_t low = 1; low < q && !found; ++low) {
            std::uint64_t v = low;
            for (std::uint32_t i = 0; i < n; ++i) {
                m[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            if (m[0] == 0) continue;
            found = is_irreducible_mod_p(m, p);
        }
        if (!found) throw theorem_violation("no irreducible polynomial found");
    }
    field_ref f(new field_ctx(p, std::move(m), true));
    if (f->size() <= kEagerTableCap) f->tables();
    registry.emplace(std::pair{p, n}, f);
    return f;
}

field_ref field_ctx::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) throw input_error("field characteristic " + std::to_string(p) + " is not prime");
    for (auto& c : modulus) c %= p;
    while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
    if (modulus.size() < 2 || modulus.back() != 1) throw input_error("field modulus must be monic of positive degree");
    if (!is_irreducible_mod_p(modulus, p)) throw input_error("field modulus is reducible");
    return field_ref(new field_ctx(p, std::move(modulus), false));
}

bool field_ctx::same_as(const field_ctx& other) const {
    return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
}

ff_elem field_ctx::generator() const {
    if (n_ == 1) return from_int(-static_cast<std::int64_t>(modulus_[0]));
    return {p_};
}

ff_elem field_ctx::from_int(std::int64_t c) const {
    std::int64_t r = c % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint64_t>(r)};
}

ff_elem field_ctx::from_digits(std::span<const std::uint32_t> d) const {
    if (d.size() > n_) throw input_error("too many digits for field element");
    std::uint64_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + (d[i] % p_);
    return {v};
}

std::vector<std::uint32_t> field_ctx::digits(ff_elem a) const {
    std::vector<std::uint32_t> d(n_);
    std::uint64_t v = a.v;
    for (std::uint32_t i = 0; i < n_; ++i) {
        d[i] = static_cast<std::uint32_t>(v % p_);
        v /= p_;
    }
    return d;
}

ff_elem field_ctx::add_generic(ff_elem a, ff_elem b) const {
    std::uint64_t x = a.v, y = b.v, r = 0;
    for (std::uint32_t i = 0; i < n_ && (x || y); ++i) {
        std::uint64_t d = x % p_ + y % p_;
        if (d >= p_) d -= p_;
        r += d * pow_p_[i];
        x /= p_;
        y /= p_;
    }
    return {r};
}

ff_elem field_ctx::add(ff_elem a, ff_elem b) const {
    if (n_ == 1) {
        std::uint64_t r = a.v + b.v;
        return {r >= p_ ? r - p_ : r};
    }
    if (p_ == 2) return {a.v ^ b.v};
    if (a.v == 0) return b;
    if (b.v == 0) return a;
    if (const auto* t = fast_.load(std::memory_order_acquire); t && !t->zech.empty()) {
        const std::uint64_t order = q_ - 1;
        const std::uint32_t la = t->log[a.v], lb = t->log[b.v];
        const std::uint64_t d = (lb + order - la) % order;
        const std::int32_t z = t->zech[d];
        if (z < 0) return {0};
        return {t->exp[la + static_cast<std::uint32_t>(z)]};
    }
    return add_generic(a, b);
}

ff_elem field_ctx::neg(ff_elem a) const {
    if (p_ == 2 || a.v == 0) return a;
    if (n_ == 1) return {p_ - a.v};
    std::uint64_t x = a.v, r = 0;
    for (std::uint32_t i = 0; i < n_ && x; ++i) {
        const std::uint64_t d = x % p_;
        if (d) r += (p_ - d) * pow_p_[i];
        x /= p_;
    }
    return {r};
}

ff_elem field_ctx::sub(ff_elem a, ff_elem b) const { return add(a, neg(b)); }

ff_elem field_ctx::mul_generic(ff_elem a, ff_elem b) const {
    digit_buf x{}, y{}, r{};
    std::uint64_t va = a.v, vb = b.v;
    for (std::uint32_t i = 0; i < n_; ++i) {
        x[i] = va % p_;
        va /= p_;
        y[i] = vb % p_;
        vb /= p_;
    }
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (std::uint32_t j = 0; j < n_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
    }
    for (std::uint32_t i = 2 * n_ - 1; i-- > n_;) {
        const std::uint64_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        const std::uint64_t negc = p_ - c;
        for (std::uint32_t j = 0; j < n_; ++j)
            r[i - n_ + j] = (r[i - n_ + j] + negc * modulus_[j]) % p_;
    }
    std::uint64_t v = 0;
    for (std::uint32_t i = n_; i-- > 0;) v = v * p_ + r[i];
    return {v};
}

ff_elem field_ctx::mul(ff_elem a, ff_elem b) const {
    if (a.v == 0 || b.v == 0) return {0};
    if (n_ == 1) return {a.v * b.v % p_};
    if (const auto* t = fast_.load(std::memory_order_acquire)) return {t->exp[t->log[a.v] + t->log[b.v]]};
    return mul_generic(a, b);
}

ff_elem field_ctx::pow(ff_elem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.v == 0) return zero();
    if (const auto* t = fast_.load(std::memory_order_acquire)) {
        const unsigned __int128 l = static_cast<unsigned __int128>(t->log[a.v]) * e % (q_ - 1);
        return {t->exp[static_cast<std::uint64_t>(l)]};
    }
    ff_elem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

ff_elem field_ctx::inv(ff_elem a) const {
    if (a.v == 0) throw input_error("division by zero in " + describe());
    if (const auto* t = fast_.load(std::memory_order_acquire)) return {t->exp[(q_ - 1 - t->log[a.v]) % (q_ - 1)]};
    return pow(a, q_ - 2);
}

ff_elem field_ctx::frobenius(ff_elem a, std::uint32_t k) const {
    k %= n_;
    for (std::uint32_t i = 0; i < k; ++i) a = pow(a, p_);
    return a;
}

ff_elem field_ctx::pth_root(ff_elem a) const { return frobenius(a, n_ - 1); }

std::uint32_t field_ctx::absolute_trace(ff_elem a) const {
    ff_elem s = a, cur = a;
    for (std::uint32_t i = 1; i < n_; ++i) {
        cur = pow(cur, p_);
        s = add(s, cur);
    }
    if (!in_prime_field(s)) throw theorem_violation("trace left the prime field");
    return static_cast<std::uint32_t>(s.v);
}

int field_ctx::quadratic_character(ff_elem a) const {
    if (p_ == 2) throw input_error("quadratic character is undefined in characteristic 2");
    if (a.v == 0) return 0;
    if (const auto* t = fast_.load(std::memory_order_acquire)) return (t->log[a.v] & 1) ? -1 : 1;
    return pow(a, (q_ - 1) / 2) == one() ? 1 : -1;
}

bool field_ctx::is_square(ff_elem a) const {
    if (p_ == 2) return true;
    return quadratic_character(a) >= 0;
}

std::optional<ff_elem> field_ctx::sqrt(ff_elem a) const {
    if (a.v == 0) return zero();
    if (p_ == 2) return frobenius(a, n_ - 1);
    if (quadratic_character(a) < 0) return std::nullopt;
    if (const auto* t = fast_.load(std::memory_order_acquire)) return ff_elem{t->exp[t->log[a.v] / 2]};
    // Tonelli-Shanks
    std::uint64_t odd = q_ - 1;
    std::uint32_t s = 0;
    while ((odd & 1) == 0) {
        odd >>= 1;
        ++s;
    }
    ff_elem z{2};
    while (quadratic_character(z) != -1) z = {z.v + 1};
    ff_elem c = pow(z, odd);
    ff_elem x = pow(a, (odd + 1) / 2);
    ff_elem b = pow(a, odd);
    std::uint32_t m = s;
    while (b != one()) {
        std::uint32_t i = 0;
        ff_elem bb = b;
        while (bb != one()) {
            bb = sqr(bb);
            ++i;
        }
        ff_elem w = c;
        for (std::uint32_t j = 0; j + 1 < m - i; ++j) w = sqr(w);
        x = mul(x, w);
        c = sqr(w);
        b = mul(b, c);
        m = i;
    }
    return x;
}

ff_elem field_ctx::random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, q_ - 1);
    return {dist(rng)};
}

std::string field_ctx::format(ff_elem a) const {
    if (n_ == 1) return std::to_string(a.v);
    if (a.v == 0) return "0";
    const auto d = digits(a);
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = d.size(); k-- > 0;) {
        if (d[k] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (k == 0) {
            os << d[k];
            continue;
        }
        if (d[k] != 1) os << d[k] << '*';
        os << 'g';
        if (k > 1) os << '^' << k;
    }
    return os.str();
}

std::string field_ctx::describe() const {
    std::ostringstream os;
    os << "GF(" << p_;
    if (n_ > 1) os << '^' << n_;
    os << ')';
    return os.str();
}

const field_tables* field_ctx::tables() const {
    if (q_ > kTableCap) return nullptr;
    std::call_once(tables_once_, [this] { build_tables(); });
    return tables_.get();
}

void field_ctx::build_tables() const {
    auto t = std::make_unique<field_tables>();
    const std::uint64_t order = q_ - 1;
    const auto factors = prime_factors(order);
    ff_elem g{1};
    for (std::uint64_t v = 1; v < q_; ++v) {
        bool primitive = true;
        for (std::uint64_t r : factors) {
            if (pow(ff_elem{v}, order / r) == one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = {v};
            break;
        }
    }
    t->primitive = g;
    t->exp.resize(2 * order + 1);
    t->log.assign(q_, 0);
    ff_elem cur = one();
    for (std::uint64_t i = 0; i < order; ++i) {
        t->exp[i] = static_cast<std::uint32_t>(cur.v);
        t->log[cur.v] = static_cast<std::uint32_t>(i);
        cur = n_ == 1 ? mul(cur, g) : mul_generic(cur, g);
    }
    for (std::uint64_t i = order; i < t->exp.size(); ++i) t->exp[i] = t->exp[i - order];
    if (p_ != 2 && n_ > 1) {
        t->zech.resize(order);
        for (std::uint64_t k = 0; k < order; ++k) {
            const std::uint64_t v = t->exp[k];
            const std::uint64_t d0 = v % p_;
            const std::uint64_t w = v - d0 + (d0 + 1) % p_;
            t->zech[k] = w == 0 ? -1 : static_cast<std::int32_t>(t->log[w]);
        }
    }
    tables_ = std::move(t);
    fast_.store(tables_.get(), std::memory_order_release);
}

// ---------------------------------------------------------------- embedding

field_embedding::field_embedding(field_ref source, field_ref target, ff_elem generator_image)
    : source_(std::move(source)), target_(std::move(target)), gen_image_(generator_image) {
    if (source_->characteristic() != target_->characteristic())
        throw input_error("embedding between fields of different characteristic");
    if (target_->degree() % source_->degree() != 0)
        throw input_error("source degree does not divide target degree");
    // the image of g must satisfy the source modulus
    ff_elem acc = target_->zero();
    const auto& m = source_->modulus();
    for (std::size_t i = m.size(); i-- > 0;)
        acc = target_->add(target_->mul(acc, gen_image_), target_->from_int(m[i]));
    if (acc != target_->zero()) throw input_error("generator image is not a root of the source modulus");
    basis_images_.resize(source_->degree());
    ff_elem cur = target_->one();
    for (auto& b : basis_images_) {
        b = cur;
        cur = target_->mul(cur, gen_image_);
    }
}

field_embedding field_embedding::identity(const field_ref& f) {
    field_embedding e;
    e.source_ = f;
    e.target_ = f;
    e.gen_image_ = f->generator();
    e.basis_images_.resize(f->degree());
    ff_elem cur = f->one();
    for (auto& b : e.basis_images_) {
        b = cur;
        cur = f->mul(cur, e.gen_image_);
    }
    return e;
}

ff_elem field_embedding::operator()(ff_elem x) const {
    if (source_.get() == target_.get()) return x;
    if (source_->degree() == 1) return target_->from_int(static_cast<std::int64_t>(x.v));
    const auto d = source_->digits(x);
    ff_elem r = target_->zero();
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i]) r = target_->add(r, target_->scale(basis_images_[i], d[i]));
    return r;
}

}  // namespace ellmu
