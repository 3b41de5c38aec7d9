#include "ellmu/rational_function.hpp"

#include <algorithm>
#include <cctype>

#include "ellmu/errors.hpp"

namespace ellmu {

rational_function::rational_function(field_ref f) : num_(f), den_(poly::constant(f, f->one())) {}

rational_function::rational_function(poly num) : num_(std::move(num)) {
    den_ = poly::constant(num_.field(), num_.F().one());
}

rational_function::rational_function(poly num, poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw input_error("rational function with zero denominator");
    normalize();
}

void rational_function::normalize() {
    if (num_.is_zero()) {
        den_ = poly::constant(num_.field(), num_.F().one());
        return;
    }
    poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    const ff_elem lc = den_.leading();
    if (lc != F().one()) {
        const ff_elem inv = F().inv(lc);
        num_ = num_.scale(inv);
        den_ = den_.scale(inv);
    }
}

rational_function rational_function::constant(field_ref f, ff_elem c) { return rational_function(poly::constant(f, c)); }

rational_function rational_function::from_int(field_ref f, std::int64_t c) {
    const ff_elem e = f->from_int(c);
    return constant(std::move(f), e);
}

rational_function rational_function::variable(field_ref f) { return rational_function(poly::variable(f)); }

std::optional<ff_elem> rational_function::constant_value() const {
    if (!is_constant()) return std::nullopt;
    return num_.coeff(0);
}

rational_function rational_function::pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    rational_function r;
    r.num_ = num_.pow(static_cast<std::uint64_t>(k));
    r.den_ = den_.pow(static_cast<std::uint64_t>(k));
    return r;
}

rational_function rational_function::inverse() const {
    if (is_zero()) throw input_error("inverse of zero rational function");
    return rational_function(den_, num_);
}

rational_function rational_function::derivative() const {
    return rational_function(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

rational_function rational_function::invert_variable() const {
    if (is_zero()) return *this;
    const int dn = num_.degree(), dd = den_.degree();
    poly n = num_.reversed(dn), d = den_.reversed(dd);
    // f(1/s) = s^(dd - dn) * n(s) / d(s)
    if (dd >= dn)
        n = n * poly::monomial(field(), F().one(), dd - dn);
    else
        d = d * poly::monomial(field(), F().one(), dn - dd);
    return rational_function(n, d);
}

rational_function rational_function::frobenius_power(std::uint32_t k) const {
    return rational_function(num_.frobenius_power(k), den_.frobenius_power(k));
}

std::string rational_function::format(const std::string& var) const {
    if (den_.is_one()) return num_.format(var);
    auto wrap = [&](const poly& p) {
        std::string s = p.format(var);
        return p.coeffs().size() - std::count(p.coeffs().begin(), p.coeffs().end(), ff_elem{0}) > 1 ? "(" + s + ")" : s;
    };
    return wrap(num_) + "/" + wrap(den_);
}

rational_function operator+(const rational_function& a, const rational_function& b) {
    if (a.den_ == b.den_) return rational_function(a.num_ + b.num_, a.den_);
    return rational_function(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

rational_function operator-(const rational_function& a, const rational_function& b) { return a + (-b); }

rational_function operator*(const rational_function& a, const rational_function& b) {
    if (a.den_.is_one() && b.den_.is_one()) {
        rational_function r;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_;
        return r;
    }
    return rational_function(a.num_ * b.num_, a.den_ * b.den_);
}

rational_function operator/(const rational_function& a, const rational_function& b) {
    if (b.is_zero()) throw input_error("division by zero rational function");
    return rational_function(a.num_ * b.den_, a.den_ * b.num_);
}

rational_function rational_function::operator-() const {
    rational_function r = *this;
    r.num_ = -num_;
    return r;
}

namespace {

class parser {
public:
    parser(const field_ref& f, const std::string& text, const std::string& var) : f_(f), s_(text), var_(var) {}

    rational_function run() {
        rational_function r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw input_error("parse error at offset " + std::to_string(pos_) + " in \"" + s_ + "\": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    rational_function expr() {
        rational_function r = term();
        while (true) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }

    rational_function term() {
        rational_function r = unary();
        while (true) {
            if (eat('*'))
                r = r * unary();
            else if (eat('/'))
                r = r / unary();
            else
                return r;
        }
    }

    rational_function unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    rational_function power() {
        rational_function base = atom();
        if (eat('^')) {
            skip();
            bool neg = false;
            if (eat('-')) neg = true;
            skip();
            if (eat('(')) {
                bool inner_neg = eat('-');
                std::int64_t k = integer();
                if (!eat(')')) fail("expected ')'");
                return base.pow((neg != inner_neg) ? -k : k);
            }
            std::int64_t k = integer();
            return base.pow(neg ? -k : k);
        }
        return base;
    }

    std::int64_t integer() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > (std::int64_t{1} << 56)) fail("integer too large");
            v = v * 10 + (s_[pos_++] - '0');
        }
        return v;
    }

    rational_function atom() {
        skip();
        if (eat('(')) {
            rational_function r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::uint64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                v = (v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0')) % f_->characteristic();
            return rational_function::from_int(f_, static_cast<std::int64_t>(v));
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        if (name.empty()) fail("expected operand");
        if (name == var_) return rational_function::variable(f_);
        if (name == "g") return rational_function::constant(f_, f_->generator());
        pos_ = start;
        fail("unknown symbol '" + name + "'");
    }

    field_ref f_;
    std::string s_;
    std::string var_;
    std::size_t pos_ = 0;
};

}  // namespace

rational_function parse_rational_function(const field_ref& f, const std::string& text, const std::string& var) {
    if (var == "g") throw input_error("variable name clashes with the field generator");
    return parser(f, text, var).run();
}

}  // namespace ellmu
