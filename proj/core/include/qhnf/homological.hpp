#ifndef QHNF_HOMOLOGICAL_HPP
#define QHNF_HOMOLOGICAL_HPP

#include <map>
#include <utility>
#include <vector>

#include "qhnf/grading.hpp"
#include "qhnf/logfields.hpp"
#include "qhnf/milnor.hpp"

namespace qhnf {

// How remainders of the homological equation X0(b) = beta are represented.
//  structured: free module over power series in h, basis a_i (Milnor basis);
//  diagonal:   X0 acts diagonally on monomials, remainders live on powers of
//              the kernel monomial sigma;
//  generic:    per-degree echelon complement, no module structure claimed.
enum class BasisMode { structured, diagonal, generic };

struct CokerStructure {
    BasisMode mode = BasisMode::generic;
    LogBasis basis;     // validated (X0, R)
    CokerBasis coker;   // structured: Milnor basis; diagonal: the single class 1
    Poly power;         // h (structured) or the kernel monomial (diagonal)
    int power_deg = 0;
    bool has_power = false;
    Rational diag_x, diag_y; // diagonal mode: X0 = diag_x*x dx + diag_y*y dy
};

// Classifies X0 and fixes the remainder structure. X0 must be logarithmic
// and form a basis of the logarithmic fields together with R.
CokerStructure analyze_cokernel(const QHContext& ctx, const VField& x0);

// Element sum c_{ij} * a_i * power^j of the remainder module.
struct CokerElement {
    std::map<std::pair<int, int>, Rational> c; // (basis index, power) -> coeff

    bool is_zero() const { return c.empty(); }
    void add(int i, int j, const Rational& v);
};

Poly materialize(const CokerElement& e, const CokerStructure& st, const QHContext& ctx);

struct SolveResult {
    Poly b;
    Poly remainder;        // as a polynomial, all modes
    CokerElement elem;     // structured/diagonal representation
    bool structure_known = true;
};

// beta = X0(b) + remainder mod degree > K, remainder supported on the
// complement fixed by the structure. The particular solution carries no
// kernel component.
SolveResult solve_x0(const Poly& beta, const CokerStructure& st, const QHContext& ctx);

// f = a*h + X0(b) for f in the Jacobian ideal (structured pipeline only).
// Throws naming the first degree slice where f is not in the ideal.
std::pair<Poly, Poly> division_lemma(const Poly& f, const CokerStructure& st,
                                     const QHContext& ctx);

// Gauss-Manin style connection on classes of multiples of h:
// a_i h^j -> (j + r_i) a_i h^(j-1), r_i = pdeg(a_i)/delta.
CokerElement connection_apply(const CokerElement& e, const CokerStructure& st,
                              const QHContext& ctx);

// Kernel of X0 restricted to the degree-m slice (brute-force rank).
std::vector<Poly> kernel_slice(int m, const CokerStructure& st, const QHContext& ctx);

// #{(i,j) : pdeg(a_i) + j*delta = n} (structured complement slot count).
int structured_complement_count(const CokerStructure& st, int n);

} // namespace qhnf

#endif
