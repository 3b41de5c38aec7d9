#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ellmu {

// Element of F_{p^n}, stored as the packed base-p integer sum c_i p^i of its
// coordinates in the power basis 1, g, g^2, ... of the owning field.
// Meaningless without its field_ctx; all arithmetic goes through the context.
struct ff_elem {
    std::uint64_t v = 0;

    friend bool operator==(ff_elem, ff_elem) = default;
    friend auto operator<=>(ff_elem, ff_elem) = default;
};

class field_ctx;
using field_ref = std::shared_ptr<const field_ctx>;

// Largest field size for which log/Zech tables are built on demand.
inline constexpr std::uint64_t kTableCap = std::uint64_t{1} << 22;
// Largest field size representable at all (packed value must fit 62 bits).
inline constexpr std::uint64_t kFieldSizeCap = std::uint64_t{1} << 62;

struct field_tables {
    ff_elem primitive;
    std::vector<std::uint32_t> exp;  // 2(Q-1) entries, exp[i] = primitive^i
    std::vector<std::uint32_t> log;  // Q entries, log[0] unused
    std::vector<std::int32_t> zech;  // Q-1 entries, log(1 + g^k), -1 if zero; odd p only
};

// F_p[g]/(m(g)) for a monic irreducible m of degree n.
class field_ctx {
public:
    // Lexicographically first monic irreducible modulus of degree n (shared instance).
    static field_ref canonical(std::uint32_t p, std::uint32_t n);
    static field_ref prime(std::uint32_t p) { return canonical(p, 1); }
    // Arbitrary monic modulus (low coefficient first); rejected unless irreducible.
    static field_ref with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return n_; }
    std::uint64_t size() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    bool is_canonical() const { return canonical_; }
    bool same_as(const field_ctx& other) const;

    ff_elem zero() const { return {0}; }
    ff_elem one() const { return {1}; }
    // Class of g. For n = 1 this is the root of the linear modulus.
    ff_elem generator() const;
    ff_elem from_int(std::int64_t c) const;
    ff_elem from_digits(std::span<const std::uint32_t> digits) const;
    std::vector<std::uint32_t> digits(ff_elem a) const;
    bool in_prime_field(ff_elem a) const { return a.v < p_; }

    ff_elem add(ff_elem a, ff_elem b) const;
    ff_elem sub(ff_elem a, ff_elem b) const;
    ff_elem neg(ff_elem a) const;
    ff_elem mul(ff_elem a, ff_elem b) const;
    ff_elem sqr(ff_elem a) const { return mul(a, a); }
    ff_elem inv(ff_elem a) const;
    ff_elem div(ff_elem a, ff_elem b) const { return mul(a, inv(b)); }
    ff_elem pow(ff_elem a, std::uint64_t e) const;
    ff_elem scale(ff_elem a, std::int64_t c) const { return mul(a, from_int(c)); }

    // a^(p^k)
    ff_elem frobenius(ff_elem a, std::uint32_t k = 1) const;
    // Unique p-th root (Frobenius is bijective on a finite field).
    ff_elem pth_root(ff_elem a) const;
    // Trace down to F_p, returned as an integer in [0, p).
    std::uint32_t absolute_trace(ff_elem a) const;

    // +1, -1 or 0; odd characteristic only.
    int quadratic_character(ff_elem a) const;
    bool is_square(ff_elem a) const;
    // Some square root when one exists (any characteristic).
    std::optional<ff_elem> sqrt(ff_elem a) const;

    ff_elem random(std::mt19937_64& rng) const;

    // Canonical text: decimal for n = 1, polynomial in g otherwise ("2*g^2+g+1").
    std::string format(ff_elem a) const;
    std::string describe() const;

    // Lazily built; nullptr when the field exceeds kTableCap.
    const field_tables* tables() const;

private:
    field_ctx(std::uint32_t p, std::vector<std::uint32_t> modulus, bool canonical);

    ff_elem mul_generic(ff_elem a, ff_elem b) const;
    ff_elem add_generic(ff_elem a, ff_elem b) const;
    void build_tables() const;

    std::uint32_t p_;
    std::uint32_t n_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint64_t> pow_p_;  // p^i, i <= n
    bool canonical_;

    mutable std::once_flag tables_once_;
    mutable std::unique_ptr<field_tables> tables_;
    mutable std::atomic<const field_tables*> fast_{nullptr};
};

// Field homomorphism source -> target determined by the image of the source generator.
class field_embedding {
public:
    field_embedding() = default;
    field_embedding(field_ref source, field_ref target, ff_elem generator_image);

    static field_embedding identity(const field_ref& f);

    const field_ref& source() const { return source_; }
    const field_ref& target() const { return target_; }
    ff_elem generator_image() const { return gen_image_; }
    ff_elem operator()(ff_elem x) const;

private:
    field_ref source_;
    field_ref target_;
    ff_elem gen_image_;
    std::vector<ff_elem> basis_images_;  // images of g^i
};

// Monic irreducibility test over F_p (Rabin); coefficients low first.
bool is_irreducible_mod_p(std::span<const std::uint32_t> f, std::uint32_t p);

// Exact integer helpers used across the library.
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
// base^exp, throws resource_exhausted if the result would exceed cap.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap = kFieldSizeCap);

}  // namespace ellmu
