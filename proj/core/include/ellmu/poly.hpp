#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ellmu/exact_rational.hpp"
#include "ellmu/finite_field.hpp"

namespace ellmu {

// Dense univariate polynomial over one field_ctx, low coefficient first,
// never carrying trailing zeros.
class poly {
public:
    poly() = default;
    explicit poly(field_ref f) : field_(std::move(f)) {}
    poly(field_ref f, std::vector<ff_elem> coeffs);

    static poly constant(field_ref f, ff_elem c);
    static poly monomial(field_ref f, ff_elem c, std::size_t k);
    static poly variable(field_ref f) { return monomial(f, f->one(), 1); }
    // From integer coefficients reduced mod p (low first).
    static poly from_ints(field_ref f, const std::vector<std::int64_t>& coeffs);

    const field_ref& field() const { return field_; }
    const field_ctx& F() const { return *field_; }
    const std::vector<ff_elem>& coeffs() const { return c_; }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == ff_elem{1}; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == ff_elem{1}; }
    ff_elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ff_elem{0}; }
    ff_elem leading() const { return c_.empty() ? ff_elem{0} : c_.back(); }

    poly monic() const;
    poly derivative() const;
    ff_elem eval(ff_elem x) const;
    // Evaluate at x in emb.target(), mapping coefficients through emb.
    ff_elem eval(const field_embedding& emb, ff_elem x) const;
    poly pow(std::uint64_t k) const;
    poly scale(ff_elem c) const;
    // x -> x^k on the variable.
    poly inflate(std::uint32_t k) const;
    // Coefficients raised to p^k and variable to x^(p^k): the p^k-th power of the polynomial.
    poly frobenius_power(std::uint32_t k) const;
    // x^deg * f(1/x) (reverse of the coefficient list, given the nominal degree).
    poly reversed(std::size_t nominal_degree) const;
    // Number of times g divides this (this != 0, g non-constant).
    int multiplicity(const poly& g) const;

    std::string format(const std::string& var = "t") const;

    friend poly operator+(const poly& a, const poly& b);
    friend poly operator-(const poly& a, const poly& b);
    friend poly operator*(const poly& a, const poly& b);
    poly operator-() const;
    friend bool operator==(const poly& a, const poly& b) { return a.c_ == b.c_; }
    // Deterministic total order: degree, then coefficients from the top.
    friend bool operator<(const poly& a, const poly& b);

private:
    void normalize();
    field_ref field_;
    std::vector<ff_elem> c_;
};

std::pair<poly, poly> divmod(const poly& a, const poly& b);
poly operator/(const poly& a, const poly& b);  // exact quotient check is the caller's job
poly operator%(const poly& a, const poly& b);
// Monic gcd (zero if both zero).
poly gcd(const poly& a, const poly& b);
poly powmod(poly base, const bigint& e, const poly& m);
// Map coefficients through a field embedding.
poly map_coeffs(const poly& f, const field_embedding& emb);

bool is_irreducible(const poly& f);
// Monic squarefree parts with multiplicities; product of part^mult = monic(f).
std::vector<std::pair<poly, int>> squarefree_decomposition(const poly& f);
// Monic irreducible factors with multiplicities, sorted.
std::vector<std::pair<poly, int>> factor(const poly& f);
// Distinct roots in the coefficient field, sorted by packed value.
std::vector<ff_elem> roots(const poly& f);
// Smallest root in emb.target() of f, irreducible over emb.source() with
// all its roots in the target.
ff_elem smallest_root_of_irreducible(const poly& f, const field_embedding& emb);

// (1/d) sum_{k | d} mobius(k) q^(d/k).
std::uint64_t count_monic_irreducibles(std::uint64_t q, std::uint32_t d);
void for_each_monic_irreducible(const field_ref& f, std::uint32_t d, const std::function<void(const poly&)>& fn,
                                std::uint64_t cap = std::uint64_t{1} << 24);
std::vector<poly> enumerate_monic_irreducibles(const field_ref& f, std::uint32_t d,
                                               std::uint64_t cap = std::uint64_t{1} << 24);

struct field_extension {
    field_ref field;
    field_embedding embedding;  // base -> field
};

// Canonical field of size |base|^d with the embedding sending the base
// generator to its smallest root there.
field_extension build_extension(const field_ref& base, std::uint32_t d);

}  // namespace ellmu
