#include "ellmu/exact_rational.hpp"

#include "ellmu/errors.hpp"

namespace ellmu {

int padic_valuation(const bigint& n, std::uint64_t p) {
    if (n == 0) return std::numeric_limits<int>::max();
    if (p < 2) throw input_error("valuation needs a prime p >= 2");
    bigint m = abs(n);
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

bigint ipow(const bigint& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

exact_rational::exact_rational(const bigint& num, const bigint& den) {
    if (den == 0) throw input_error("zero denominator");
    value_ = boost::multiprecision::cpp_rational(num);
    value_ /= boost::multiprecision::cpp_rational(den);
}

exact_rational operator/(const exact_rational& a, const exact_rational& b) {
    if (b.value_ == 0) throw input_error("division by zero rational");
    return exact_rational(a.value_ / b.value_);
}

int exact_rational::valuation(std::uint64_t p) const {
    if (is_zero()) return std::numeric_limits<int>::max();
    return padic_valuation(numerator(), p) - padic_valuation(denominator(), p);
}

bigint exact_rational::floor() const {
    const bigint n = numerator(), d = denominator();
    bigint q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

std::string exact_rational::str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
}

}  // namespace ellmu
