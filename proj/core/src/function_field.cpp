#include "ellmu/function_field.hpp"

#include <algorithm>
#include <sstream>

#include "ellmu/errors.hpp"

namespace ellmu {

place::place(poly pi) : pi_(std::move(pi)) {
    if (pi_.degree() < 1 || !pi_.is_monic()) throw input_error("place polynomial must be monic of positive degree");
    if (!is_irreducible(pi_)) throw input_error("place polynomial " + pi_.format() + " is reducible");
}

place place::infinity(field_ref f) {
    place v;
    v.infinite_ = true;
    v.pi_ = poly::variable(std::move(f));
    return v;
}

std::string place::format(const std::string& var) const { return infinite_ ? "inf" : pi_.format(var); }

bool operator<(const place& a, const place& b) {
    if (a.infinite_ != b.infinite_) return b.infinite_;
    return a.pi_ < b.pi_;
}

void divisor::add(const place& v, int k) {
    if (k == 0) return;
    auto it = m_.find(v);
    if (it == m_.end()) {
        m_.emplace(v, k);
        return;
    }
    it->second += k;
    if (it->second == 0) m_.erase(it);
}

int divisor::coeff(const place& v) const {
    auto it = m_.find(v);
    return it == m_.end() ? 0 : it->second;
}

int divisor::degree() const {
    int d = 0;
    for (const auto& [v, k] : m_) d += k * v.degree();
    return d;
}

bool divisor::is_effective() const {
    return std::all_of(m_.begin(), m_.end(), [](const auto& e) { return e.second > 0; });
}

divisor operator+(const divisor& a, const divisor& b) {
    divisor r = a;
    for (const auto& [v, k] : b.m_) r.add(v, k);
    return r;
}

std::string divisor::format(const std::string& var) const {
    if (m_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, k] : m_) {
        if (!first) os << " + ";
        first = false;
        os << k << "*(" << v.format(var) << ")";
    }
    return os.str();
}

int valuation(const rational_function& f, const place& v) {
    if (f.is_zero()) throw input_error("valuation of zero");
    if (v.is_infinite()) return f.den().degree() - f.num().degree();
    const int a = f.num().degree() >= v.degree() ? f.num().multiplicity(v.polynomial()) : 0;
    const int b = f.den().degree() >= v.degree() ? f.den().multiplicity(v.polynomial()) : 0;
    return a - b;
}

std::vector<place> finite_support(const rational_function& f) {
    if (f.is_zero()) throw input_error("support of zero");
    std::vector<place> out;
    for (const poly* p : {&f.num(), &f.den()})
        if (p->degree() > 0)
            for (const auto& [g, m] : factor(*p)) out.emplace_back(g);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<divisor, divisor> zeros_poles(const rational_function& f) {
    if (f.is_zero()) throw input_error("divisor of zero");
    divisor zeros, poles;
    for (const place& v : finite_support(f)) {
        const int k = valuation(f, v);
        if (k > 0) zeros.add(v, k);
        if (k < 0) poles.add(v, -k);
    }
    const place inf = place::infinity(f.field());
    const int k = valuation(f, inf);
    if (k > 0) zeros.add(inf, k);
    if (k < 0) poles.add(inf, -k);
    return {zeros, poles};
}

local_context::local_context(const place& v, int residue_extension, std::optional<poly> uniformizer, int ramification)
    : v_(v), ext_(residue_extension), ram_(ramification) {
    if (ext_ < 1) throw input_error("residue extension degree must be positive");
    if (ram_ != 1 && ram_ != 2) throw input_error("only ramification index 1 or 2 is supported");
    const field_ref& base = v.field();
    const std::uint32_t total = static_cast<std::uint32_t>(v.degree() * ext_);
    if (total == 1) {
        residue_ = base;
        emb_ = field_embedding::identity(base);
    } else {
        auto ext = build_extension(base, total);
        residue_ = ext.field;
        emb_ = ext.embedding;
    }
    const poly& pi = v.polynomial();
    theta_ = smallest_root_of_irreducible(pi, emb_);
    h_ = uniformizer ? *uniformizer : pi;
    if (h_.eval(emb_, theta_).v != 0 || h_.derivative().eval(emb_, theta_).v == 0)
        throw input_error("local parameter must vanish simply at the place");
}

rational_function local_context::to_coordinate(const rational_function& f) const {
    return v_.is_infinite() ? f.invert_variable() : f;
}

int local_context::valuation(const rational_function& f) const { return ram_ * ellmu::valuation(f, v_); }

laurent_series local_context::coordinate(int precision) const { return hensel_root(h_, emb_, theta_, precision); }

laurent_series local_context::expand(const rational_function& f, int precision) const {
    if (f.is_zero()) return laurent_series(residue_, precision);
    const rational_function g = to_coordinate(f);
    // work in u; w-precision M needs u-precision ceil(M / ram)
    const int m = precision >= 0 ? (precision + ram_ - 1) / ram_ : -((-precision) / ram_);
    const place local = v_.is_infinite() ? place(poly::variable(v_.field())) : v_;
    const int vn = g.num().degree() >= local.degree() ? g.num().multiplicity(local.polynomial()) : 0;
    const int vd = g.den().degree() >= local.degree() ? g.den().multiplicity(local.polynomial()) : 0;
    const int work = std::max(m, 1) + vn + 2 * vd + 1;
    const laurent_series tau = coordinate(work);
    laurent_series s = evaluate(g.num(), emb_, tau);
    if (!g.den().is_one()) s = s / evaluate(g.den(), emb_, tau);
    s = s.truncate(m);
    if (s.precision() < m) throw theorem_violation("local expansion lost precision");
    return ram_ == 1 ? s : s.inflate(ram_).truncate(precision);
}

ff_elem local_context::reduce(const rational_function& f) const {
    if (f.is_zero()) return residue_->zero();
    if (valuation(f) < 0) throw input_error("reduction of a function with a pole");
    return expand(f, 1).coeff(0);
}

}  // namespace ellmu
