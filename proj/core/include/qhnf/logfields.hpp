#ifndef QHNF_LOGFIELDS_HPP
#define QHNF_LOGFIELDS_HPP

#include <optional>
#include <string>

#include "qhnf/grading.hpp"

namespace qhnf {

// Plane vector field P dx + Q dy in the standard basis.
struct VField {
    Poly P, Q;

    bool is_zero() const { return P.is_zero() && Q.is_zero(); }
    Poly apply(const Poly& f) const { return P * f.dx() + Q * f.dy(); }

    friend VField operator+(const VField& a, const VField& b) { return {a.P + b.P, a.Q + b.Q}; }
    friend VField operator-(const VField& a, const VField& b) { return {a.P - b.P, a.Q - b.Q}; }
    VField scaled(const Rational& c) const { return {P.scaled(c), Q.scaled(c)}; }
    friend bool operator==(const VField& a, const VField& b) { return a.P == b.P && a.Q == b.Q; }
};

VField lie_bracket(const VField& X, const VField& Y);

// Field-degree helpers: a monomial x^a y^b dx has weighted degree
// a*p1 + b*p2 - p1. Truncation keeps components of degree <= K.
int field_order(const VField& X, const Weights& w);          // kOrderInf for 0
VField field_component(const VField& X, const Weights& w, int degree);
VField field_truncate(const VField& X, const Weights& w, int K);
std::optional<int> field_qh_degree(const VField& X, const Weights& w);

VField radial_field(const Weights& w);
VField multiply(const Poly& f, const VField& X);

// Shared data of one problem: weights, separatrix equation h0, first
// integral h, their degrees, and the truncation bound K.
struct QHContext {
    Weights w;
    Poly h0;     // reduced separatrix equation
    Poly h;      // quasi-homogeneous equation with the same zero set
    int d0 = 0;      // degree of h0
    int delta = 0;   // degree of h
    int delta0 = 0;  // d0 - p1 - p2
    int K = 0;       // truncation bound (p-degree)
};

QHContext make_context(const Weights& w, const Poly& h, const Poly& h0, int K);

// X0 = (h0 / (delta*h)) * (h_y dx - h_x dy); equals X_h/delta when h = h0.
VField hamiltonian_x0(const QHContext& ctx);

bool is_logarithmic(const VField& X, const QHContext& ctx);

// Coordinates relative to the basis (X0, R) of the logarithmic fields,
// and its dual form basis (omega_0, omega_R).
struct LogField {
    Poly a, b; // a*X0 + b*R
};
struct LogForm {
    Poly c0, cR; // c0*omega_0 + cR*omega_R
};

// A validated basis (X0, R): X0 logarithmic, and det(X0, R) = omega_const*h0
// with a nonzero constant (the freeness criterion for plane curves).
struct LogBasis {
    VField x0;
    VField radial;
    Rational omega_const; // det(X0,R)/h0
    int delta0 = 0;       // degree of x0
};

LogBasis make_log_basis(const QHContext& ctx, const VField& x0);
LogBasis hamiltonian_basis(const QHContext& ctx);

LogField to_log_basis(const VField& X, const LogBasis& basis, const QHContext& ctx);
VField from_log_basis(const LogField& lf, const LogBasis& basis, const QHContext& ctx);

LogForm sharp(const VField& X, const LogBasis& basis, const QHContext& ctx);
VField flat(const LogForm& om, const LogBasis& basis, const QHContext& ctx);

// Pairing of a form and a field in log coordinates:
// omega_0(X0)=0, omega_0(R)=1, omega_R(X0)=-1, omega_R(R)=0.
Poly pairing(const LogForm& om, const LogField& X);

// df = R(f) omega_0 - X0(f) omega_R.
LogForm differential(const Poly& f, const LogBasis& basis, const QHContext& ctx);

} // namespace qhnf

#endif
