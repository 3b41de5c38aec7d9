#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellmu/analysis.hpp"

namespace ellmu {

enum class place_behavior { split, inert, ramified };
std::string to_string(place_behavior b);

// K' = K(sqrt(D)) for K = F_q(t), q odd.
struct quad_ext {
    rational_function D;
    poly d0;  // squarefree representative of D mod squares, constant included
    int genus = 0;
    std::vector<place> ramified;

    bool is_ramified(const place& v) const;
    // Polynomial in the place coordinate whose square root is a uniformizer
    // above a ramified place.
    poly ramified_parameter(const place& v) const;
};

// Throws input_error in characteristic 2 and for constant D0.
quad_ext make_quad_ext(const rational_function& D);

place_behavior splitting(const quad_ext& ext, const place& v);

struct place_above {
    place base;
    place_behavior behavior = place_behavior::split;
    std::vector<local_data> above;
};

// Local data at the places of K' over v; residue_degree and ramification
// describe each place above.
place_above local_data_above(const weierstrass_model& m, const quad_ext& ext, const place& v,
                             int precision_cap = 1 << 16);

struct base_change_summary {
    quad_ext ext;
    std::vector<place_above> places;
    int deg_delta = 0;
    int deg_n = 0;
    int genus = 0;
    int dim_tr = 0;
    int a_prime = 0;
    bool semistable = true;
};

// Every bad place of m and every ramified place, with Ogg-Shafarevich
// degree a' = deg N' + 4 (g' - 1) + 4 dim Tr.
base_change_summary aggregate(const quad_ext& ext, const weierstrass_model& m, int dim_tr = 0,
                              int precision_cap = 1 << 16);

struct base_change_analysis {
    base_change_summary summary;
    analysis base;
    analysis twist;
    l_polynomial product;
    iwasawa_summary iwasawa;
};

// L over K' as the product of the L-polynomials of m and its twist by D0;
// asserts deg(product) = a'.
base_change_analysis analyze_base_change(const weierstrass_model& m, const rational_function& D,
                                         const analysis_options& opt = {});

}  // namespace ellmu
