#ifndef QHNF_PRENORM_HPP
#define QHNF_PRENORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "qhnf/homological.hpp"
#include "qhnf/series.hpp"

namespace qhnf {

// Ordered list of exponential generators plus the accumulated unit.
// The conjugation is exp(Z_1) then exp(Z_2) ... applied as pullbacks in list
// order; every generator has field order >= 1.
struct ConjugationScript {
    std::vector<VField> generators;
    Poly unit = Poly::constant(1);
    bool fibered = true; // every generator is c*R
};

struct FinalizedInfo {
    int index = 0; // 0-based basis index
    int m = 0;
    int n = 0;
    Rational lambda;          // coefficient of the rational form denominator
    Rational lead;            // leading coefficient of the reduced d_i
    bool lambda_in_window = true; // resonant slot within the truncation bound
    int stabilizer = 0;       // order of the residual rotation group, q_i + delta*m
};

// X0 + sum_i d_i(power) a_i R, plus the X0-coefficient for the field
// pipeline. d[i][j] is the coefficient of a_i * power^j.
struct NormalForm {
    CokerStructure structure;
    std::vector<Series> d;
    bool has_field_part = false;
    Series field_part;     // a-coefficient minus 1, series in power
    Poly raw_dissipative;  // generic mode only
    std::optional<FinalizedInfo> finalized;

    bool dissipative_is_zero() const;
    Poly dissipative_poly(const QHContext& ctx) const; // sum d_i(power) a_i
    VField materialize(const QHContext& ctx) const;
    int power_len(const QHContext& ctx, int basis_index) const;
};

// Pullback of X through exp(Z) as the terminating adjoint series, exact
// modulo field degree > K. Z must have field order >= 1.
VField exp_conjugate(const VField& Z, const VField& X, const Weights& w, int K);

struct PrenormResult {
    NormalForm nf;
    ConjugationScript script;
};

// Perturbation input: X logarithmic, lowest component equal to the basis
// field X0, dissipative component of order > delta0.
PrenormResult prenormalize_foliation(const VField& X, const CokerStructure& st,
                                     const QHContext& ctx);

// delta0 = 0 only; conjugates X (no unit) to (1 + a(power)) X0 + b(power) R.
PrenormResult prenormalize_field(const VField& X, const CokerStructure& st,
                                 const QHContext& ctx);

struct VerifyReport {
    bool ok = true;
    int degree = -1;
    Exp monomial;
    std::string component;

    std::string describe() const;
};

// Recomputes the pullback of X through the script and compares it with
// unit * (normal form), exactly, up to field degree K.
VerifyReport verify_conjugacy(const VField& X, const ConjugationScript& script,
                              const NormalForm& nf, const QHContext& ctx, int K);

// Validated decomposition of a perturbation input; throws precondition
// errors that name the offending degree.
LogField perturbation_coordinates(const VField& X, const CokerStructure& st,
                                  const QHContext& ctx);

} // namespace qhnf

#endif
