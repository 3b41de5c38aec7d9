#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellmu/laurent_series.hpp"
#include "ellmu/rational_function.hpp"

namespace ellmu {

// Place of F_q(t): a monic irreducible polynomial or the infinite place.
class place {
public:
    place() = default;
    explicit place(poly pi);
    static place infinity(field_ref f);

    bool is_infinite() const { return infinite_; }
    const poly& polynomial() const { return pi_; }  // s for the infinite place
    const field_ref& field() const { return pi_.field(); }
    int degree() const { return infinite_ ? 1 : pi_.degree(); }
    std::string format(const std::string& var = "t") const;

    // Finite places ordered by polynomial, infinity last.
    friend bool operator<(const place& a, const place& b);
    friend bool operator==(const place& a, const place& b) {
        return a.infinite_ == b.infinite_ && a.pi_ == b.pi_;
    }

private:
    bool infinite_ = false;
    poly pi_;
};

class divisor {
public:
    void add(const place& v, int k);
    int coeff(const place& v) const;
    int degree() const;
    bool is_effective() const;
    const std::map<place, int>& entries() const { return m_; }
    friend divisor operator+(const divisor& a, const divisor& b);
    friend bool operator==(const divisor& a, const divisor& b) { return a.m_ == b.m_; }
    std::string format(const std::string& var = "t") const;

private:
    std::map<place, int> m_;
};

int valuation(const rational_function& f, const place& v);
// (f)_0 and (f)_inf, effective with disjoint support.
std::pair<divisor, divisor> zeros_poles(const rational_function& f);
// Finite places where f has a zero or pole.
std::vector<place> finite_support(const rational_function& f);

// Completion of F_q(t) (or of an unramified/ramified quadratic extension of
// it) at a place, as k((w)) with an explicit image of t.
//
// The local parameter u is a polynomial h in the place coordinate (t, or
// s = 1/t at infinity) with a simple zero at the place; by default h is the
// place polynomial. The residue field may be enlarged by a factor
// residue_extension (unramified base change). With ramification 2 the local
// parameter becomes w with w^2 = u.
class local_context {
public:
    local_context(const place& v, int residue_extension = 1, std::optional<poly> uniformizer = std::nullopt,
                  int ramification = 1);

    const place& at() const { return v_; }
    const field_ref& residue_field() const { return residue_; }
    const field_embedding& embedding() const { return emb_; }
    ff_elem theta() const { return theta_; }
    int ramification() const { return ram_; }
    int residue_extension() const { return ext_; }
    // Degree of the residue field over the constant field.
    int residue_degree() const { return v_.degree() * ext_; }
    std::uint64_t residue_size() const { return residue_->size(); }

    // Exact valuation in the local parameter.
    int valuation(const rational_function& f) const;
    // Expansion of f known to absolute precision (in the local parameter).
    laurent_series expand(const rational_function& f, int precision) const;
    // Image of the place coordinate as a series in u (before ramification).
    laurent_series coordinate(int precision) const;
    // The residue of f (v(f) >= 0 required).
    ff_elem reduce(const rational_function& f) const;

private:
    rational_function to_coordinate(const rational_function& f) const;
    place v_;
    int ext_;
    int ram_;
    poly h_;
    field_ref residue_;
    field_embedding emb_;
    ff_elem theta_;
};

}  // namespace ellmu
