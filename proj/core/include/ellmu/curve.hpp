#pragma once

#include <array>
#include <optional>
#include <string>

#include "ellmu/rational_function.hpp"

namespace ellmu {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q(t).
class weierstrass_model {
public:
    weierstrass_model() = default;
    // Throws input_error when the discriminant vanishes.
    weierstrass_model(rational_function a1, rational_function a2, rational_function a3, rational_function a4,
                      rational_function a6);
    static weierstrass_model from_strings(const field_ref& f, const std::array<std::string, 5>& coeffs,
                                          const std::string& var = "t");

    const field_ref& field() const { return a_[0].field(); }
    const field_ctx& F() const { return a_[0].F(); }
    const std::array<rational_function, 5>& a() const { return a_; }
    const rational_function& a1() const { return a_[0]; }
    const rational_function& a2() const { return a_[1]; }
    const rational_function& a3() const { return a_[2]; }
    const rational_function& a4() const { return a_[3]; }
    const rational_function& a6() const { return a_[4]; }
    bool coefficients_constant() const;

    friend bool operator==(const weierstrass_model& x, const weierstrass_model& y) { return x.a_ == y.a_; }

private:
    std::array<rational_function, 5> a_;
};

struct invariants {
    rational_function b2, b4, b6, b8, c4, c6, discriminant, j;
};

invariants standard_invariants(const weierstrass_model& m);

// y^2 = x(x-1)(x-f); odd characteristic, f not 0 or 1.
weierstrass_model legendre_curve(const rational_function& f);

// Standard change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + w.
weierstrass_model transform(const weierstrass_model& m, const rational_function& u, const rational_function& r,
                            const rational_function& s, const rational_function& w);

// y^2 = x^3 + D b2/4 x^2 + D^2 b4/2 x + D^3 b6/4; odd characteristic.
weierstrass_model quadratic_twist(const weierstrass_model& m, const rational_function& D);

// Coefficients raised to the p^mexp-th power.
weierstrass_model frobenius_twist(const weierstrass_model& m, std::uint32_t mexp);

bool j_is_pth_power(const weierstrass_model& m);

enum class constancy_kind { constant, non_constant, undetermined };

struct constancy {
    constancy_kind kind = constancy_kind::undetermined;
    // For constant curves: a model over F_q and its Frobenius trace.
    std::optional<std::array<ff_elem, 5>> constant_model;
    std::optional<std::int64_t> trace;
    std::string reason;
};

struct curve_meta {
    rational_function j;
    bool is_isotrivial = false;
    bool j_is_pth_power = false;
    constancy constancy_class;
    std::optional<rational_function> legendre_parameter;
};

constancy detect_constancy(const weierstrass_model& m);
curve_meta describe_curve(const weierstrass_model& m, std::optional<rational_function> legendre = std::nullopt);

std::string to_string(constancy_kind k);

}  // namespace ellmu
