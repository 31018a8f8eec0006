#ifndef QHNF_FINALRED_HPP
#define QHNF_FINALRED_HPP

#include <optional>

#include "qhnf/prenorm.hpp"

namespace qhnf {

// One-variable field z^order * u(z) d/dz with u(0) != 0, possibly living on
// a cover z^coverExponent = sigma of the base variable.
struct OneVarField {
    int coverExponent = 1;
    int order = 0;
    Series u;
};

// Coefficient of z^-1 in dz/v, computed by truncated series inversion.
// Invariant under tangent-to-identity changes of the variable.
Rational residue(const OneVarField& v);

struct OneVarNormalization {
    int m = 0;             // order of the field
    Rational lambda;       // residue of the input (= of the output)
    Series phi;            // tangent-to-identity conjugation, pullback convention
    OneVarField normal;    // a*z^m/(1 + a*lambda*z^(m-1)) dz truncated
    bool lambda_in_window = true;
};

// Conjugates v to its rational normal form by killing one coefficient per
// degree with steps z + eps*z^(s+1); the resonant slot s = order-1 carries
// the residue and stays. phi_len extends the window the composite gauge is
// carried at (the data window of v bounds which slots are touched).
OneVarNormalization normalize_onevar(const OneVarField& v, int phi_len = 0);

// Action of the fibered conjugation with h∘Phi = psi∘h on a prenormal form:
// d_i -> (d_i∘psi) * (psi/h)^(1 + q_i/delta) / psi', with q_i = pdeg(a_i) - delta0,
// computed through binomial powers of the unit psi/h. The field-part
// coefficient transforms by composition (delta0 = 0 pipelines).
NormalForm fibered_action(const NormalForm& nf, const Series& psi, const QHContext& ctx);

enum class ReduceStatus { reduced_lambda_nonzero, reduced_lambda_zero, integrable, prenormal_only };

struct FinalReduceResult {
    NormalForm nf;
    std::vector<VField> gauges;   // extra script generators, application order
    ReduceStatus status = ReduceStatus::integrable;
};

// Normalizes the picked coefficient (default: first nonzero in basis order)
// to lead * h^m / (1 + lambda * h^(m+n)) through a fibered gauge; lambda can
// be nonzero only when delta divides q_i.
FinalReduceResult final_reduce(const NormalForm& nf, std::optional<int> pick,
                               const QHContext& ctx);

// delta0 = 0 field pipeline: one-variable normalization of the dissipative
// coefficient, then truncation of the integrable coefficient to a polynomial
// of degree <= m through exp(alpha * X0).
FinalReduceResult field_final_reduce(const NormalForm& nf, const QHContext& ctx);

// b with exp(b(sigma) R) inducing sigma -> psi(sigma); certificate generator
// for a fibered gauge.
Poly fibered_generator(const Series& psi, const Poly& sigma, int sigma_deg,
                       const QHContext& ctx);

} // namespace qhnf

#endif
