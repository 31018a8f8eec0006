#ifndef QHNF_MILNOR_HPP
#define QHNF_MILNOR_HPP

#include <vector>

#include "qhnf/grading.hpp"
#include "qhnf/logfields.hpp"

namespace qhnf {

// Monomial basis a_1 = 1, ..., a_mu of O_2 / (h_x, h_y), ordered canonically.
struct CokerBasis {
    std::vector<Exp> monomials;
    std::vector<int> degrees; // p-degrees, r_i = degrees[i]/delta
    int mu = 0;
};

// Components of the Jacobian ideal of h. Requires h = h0 (the reduced,
// isolated-singularity pipeline).
std::pair<Poly, Poly> jacobian_ideal(const QHContext& ctx);

// Degree beyond which the Milnor algebra of an isolated quasi-homogeneous
// singularity vanishes.
int socle_bound(const QHContext& ctx);

// mu for an isolated quasi-homogeneous singularity from the weights alone.
Rational milnor_number_expected(const QHContext& ctx);

// Monomials of the given degree outside the ideal slice, chosen greedily in
// canonical order.
std::vector<Exp> ideal_complement_slice(const QHContext& ctx, int degree);

bool is_isolated(const QHContext& ctx);

// Throws a precondition error for non-isolated h.
CokerBasis milnor_basis(const QHContext& ctx);

} // namespace qhnf

#endif
