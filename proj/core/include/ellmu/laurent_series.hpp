#pragma once

#include <string>
#include <vector>

#include "ellmu/poly.hpp"

namespace ellmu {

// Truncated Laurent series sum_{k >= val} c_k u^k over a residue field,
// known for exponents below an absolute precision. Coefficients are stored
// for every exponent in [val, precision); the first stored one is nonzero
// unless the series is zero to precision (then nothing is stored and
// val == precision).
class laurent_series {
public:
    laurent_series() = default;
    laurent_series(field_ref f, int precision);
    laurent_series(field_ref f, int val, std::vector<ff_elem> coeffs, int precision);

    static laurent_series constant(field_ref f, ff_elem c, int precision);
    static laurent_series monomial(field_ref f, ff_elem c, int k, int precision);

    const field_ref& field() const { return field_; }
    const field_ctx& F() const { return *field_; }
    int precision() const { return prec_; }
    bool is_zero() const { return c_.empty(); }
    // Throws precision_exhausted when zero to precision.
    int valuation() const;
    // Exact valuation, or the precision when zero to precision.
    int valuation_bound() const { return val_; }
    // Throws precision_exhausted for k >= precision.
    ff_elem coeff(int k) const;
    ff_elem leading() const;

    // Multiply by u^k.
    laurent_series shift(int k) const;
    laurent_series truncate(int precision) const;
    // Pad with zero coefficients up to the new precision (an approximation).
    laurent_series extend(int precision) const;
    // u -> u^k.
    laurent_series inflate(int k) const;
    laurent_series inverse() const;
    laurent_series scale(ff_elem c) const;

    std::string format(const std::string& var = "u") const;

    friend laurent_series operator+(const laurent_series& a, const laurent_series& b);
    friend laurent_series operator-(const laurent_series& a, const laurent_series& b);
    friend laurent_series operator*(const laurent_series& a, const laurent_series& b);
    friend laurent_series operator/(const laurent_series& a, const laurent_series& b);
    laurent_series operator-() const;

private:
    void normalize();
    field_ref field_;
    int val_ = 0;
    std::vector<ff_elem> c_;
    int prec_ = 0;
};

// Horner evaluation of f (coefficients mapped through emb) at a series of
// non-negative valuation.
laurent_series evaluate(const poly& f, const field_embedding& emb, const laurent_series& x);

// Series tau with h(tau) = u + O(u^precision) and tau(0) = root, where root is
// a simple root of emb(h) in the residue field. Newton iteration, doubling
// precision each step.
laurent_series hensel_root(const poly& h, const field_embedding& emb, ff_elem root, int precision);

}  // namespace ellmu
