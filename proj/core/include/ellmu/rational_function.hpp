#pragma once

#include <optional>
#include <string>

#include "ellmu/poly.hpp"

namespace ellmu {

// num/den in F_q(t) with den monic and gcd(num, den) = 1. Zero is 0/1.
class rational_function {
public:
    rational_function() = default;
    explicit rational_function(field_ref f);
    explicit rational_function(poly num);
    rational_function(poly num, poly den);

    static rational_function constant(field_ref f, ff_elem c);
    static rational_function from_int(field_ref f, std::int64_t c);
    static rational_function variable(field_ref f);

    const field_ref& field() const { return num_.field(); }
    const field_ctx& F() const { return num_.F(); }
    const poly& num() const { return num_; }
    const poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    std::optional<ff_elem> constant_value() const;
    bool is_polynomial() const { return den_.degree() == 0; }

    rational_function pow(std::int64_t k) const;
    rational_function inverse() const;
    // d/dt, exact.
    rational_function derivative() const;
    // f(1/s) as a function of s.
    rational_function invert_variable() const;
    // Coefficients and variable raised to p^k: the p^k-th power of f.
    rational_function frobenius_power(std::uint32_t k) const;
    // deg(num) - deg(den)
    int degree() const { return num_.degree() - den_.degree(); }

    std::string format(const std::string& var = "t") const;

    friend rational_function operator+(const rational_function& a, const rational_function& b);
    friend rational_function operator-(const rational_function& a, const rational_function& b);
    friend rational_function operator*(const rational_function& a, const rational_function& b);
    friend rational_function operator/(const rational_function& a, const rational_function& b);
    rational_function operator-() const;
    friend bool operator==(const rational_function& a, const rational_function& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    void normalize();
    poly num_;
    poly den_;
};

// Parse an expression in one variable over F_{p^n}: integers (reduced mod p),
// the field generator `g`, the variable, + - * / ^ (integer exponents, may be
// negative) and parentheses.
rational_function parse_rational_function(const field_ref& f, const std::string& text, const std::string& var = "t");

}  // namespace ellmu
