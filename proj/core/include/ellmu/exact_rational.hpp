#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

namespace ellmu {

using bigint = boost::multiprecision::cpp_int;

// v_p(n); zero has no finite valuation and is reported as int max.
int padic_valuation(const bigint& n, std::uint64_t p);

bigint ipow(const bigint& base, unsigned exp);

// Reduced fraction of big integers with exact p-adic valuations.
class exact_rational {
public:
    exact_rational() = default;
    exact_rational(std::int64_t n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    exact_rational(const bigint& num, const bigint& den);
    static exact_rational from_int(const bigint& n) { return exact_rational(n, 1); }

    bigint numerator() const { return boost::multiprecision::numerator(value_); }
    bigint denominator() const { return boost::multiprecision::denominator(value_); }
    bool is_integer() const { return denominator() == 1; }
    bool is_zero() const { return value_ == 0; }
    int sign() const { return value_.sign(); }
    // v_p(num) - v_p(den); int max for zero.
    int valuation(std::uint64_t p) const;
    // Largest integer <= value.
    bigint floor() const;
    double to_double() const { return value_.convert_to<double>(); }
    std::string str() const;

    friend exact_rational operator+(const exact_rational& a, const exact_rational& b) { return exact_rational(a.value_ + b.value_); }
    friend exact_rational operator-(const exact_rational& a, const exact_rational& b) { return exact_rational(a.value_ - b.value_); }
    friend exact_rational operator*(const exact_rational& a, const exact_rational& b) { return exact_rational(a.value_ * b.value_); }
    friend exact_rational operator/(const exact_rational& a, const exact_rational& b);
    exact_rational operator-() const { return exact_rational(-value_); }
    exact_rational& operator+=(const exact_rational& o) { value_ += o.value_; return *this; }
    exact_rational& operator-=(const exact_rational& o) { value_ -= o.value_; return *this; }

    friend bool operator==(const exact_rational& a, const exact_rational& b) { return a.value_ == b.value_; }
    friend bool operator<(const exact_rational& a, const exact_rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const exact_rational& a, const exact_rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const exact_rational& a, const exact_rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const exact_rational& a, const exact_rational& b) { return a.value_ >= b.value_; }

private:
    explicit exact_rational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
    boost::multiprecision::cpp_rational value_;
};

}  // namespace ellmu
