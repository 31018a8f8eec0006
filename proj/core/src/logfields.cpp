#include "qhnf/logfields.hpp"

#include <algorithm>

namespace qhnf {

VField lie_bracket(const VField& X, const VField& Y)
{
    return {X.apply(Y.P) - Y.apply(X.P), X.apply(Y.Q) - Y.apply(X.Q)};
}

int field_order(const VField& X, const Weights& w)
{
    int o = kOrderInf;
    if (!X.P.is_zero()) o = std::min(o, X.P.porder(w) - w.p1);
    if (!X.Q.is_zero()) o = std::min(o, X.Q.porder(w) - w.p2);
    return o;
}

VField field_component(const VField& X, const Weights& w, int degree)
{
    return {X.P.component(w, degree + w.p1), X.Q.component(w, degree + w.p2)};
}

VField field_truncate(const VField& X, const Weights& w, int K)
{
    return {X.P.truncated(w, K + w.p1), X.Q.truncated(w, K + w.p2)};
}

std::optional<int> field_qh_degree(const VField& X, const Weights& w)
{
    if (X.is_zero()) return std::nullopt;
    int o = field_order(X, w);
    VField part = field_component(X, w, o);
    if (part == X) return o;
    return std::nullopt;
}

VField radial_field(const Weights& w)
{
    return {Poly::var_x().scaled(w.p1), Poly::var_y().scaled(w.p2)};
}

VField multiply(const Poly& f, const VField& X)
{
    return {f * X.P, f * X.Q};
}

QHContext make_context(const Weights& w, const Poly& h, const Poly& h0, int K)
{
    validate_weights(w);
    if (K < 1) throw precondition_error("truncation bound must be >= 1");
    QHContext ctx;
    ctx.w = w;
    ctx.h = h;
    ctx.h0 = h0;
    ctx.K = K;

    auto dh = h.qh_degree(w);
    if (!dh) throw precondition_error("h is not quasi-homogeneous for the given weights");
    auto dh0 = h0.qh_degree(w);
    if (!dh0) throw precondition_error("h0 is not quasi-homogeneous for the given weights");
    ctx.delta = *dh;
    ctx.d0 = *dh0;
    ctx.delta0 = ctx.d0 - w.p1 - w.p2;
    if (ctx.delta < 1 || ctx.d0 < 1)
        throw precondition_error("h and h0 must vanish at the origin");
    if (ctx.delta0 < 0)
        throw precondition_error("degree of h0 is below p1 + p2; the field basis (X0, R) "
                                 "does not exist for this separatrix");

    // same zero set, checked without factoring: h0 divides some power of h
    bool divides = false;
    Poly hp = Poly::constant(1);
    for (int n = 1; n <= std::max(ctx.d0, 1); ++n) {
        hp = hp * h;
        if (divide_exact(hp, h0, w).ok) {
            divides = true;
            break;
        }
    }
    if (!divides)
        throw precondition_error("h0 does not divide any small power of h; "
                                 "h and h0 must cut out the same curve");
    return ctx;
}

VField hamiltonian_x0(const QHContext& ctx)
{
    Poly num_p = ctx.h0 * ctx.h.dy();
    Poly num_q = -(ctx.h0 * ctx.h.dx());
    Poly den = ctx.h.scaled(ctx.delta);
    auto dp = divide_exact(num_p, den, ctx.w);
    auto dq = divide_exact(num_q, den, ctx.w);
    if (!dp.ok || !dq.ok)
        throw precondition_error("inconsistent (h, h0) pair: h0*dh is not divisible by h");
    return {dp.quotient, dq.quotient};
}

bool is_logarithmic(const VField& X, const QHContext& ctx)
{
    Poly xh0 = X.apply(ctx.h0);
    int cap = xh0.pdeg_max(ctx.w);
    return divide_exact(xh0, ctx.h0, ctx.w, cap).ok;
}

namespace {

// det of components over h0; exact, fails for non-logarithmic pairs
Poly omega_pair(const VField& X, const VField& Y, const QHContext& ctx, const char* what)
{
    Poly det = X.P * Y.Q - X.Q * Y.P;
    auto d = divide_exact(det, ctx.h0, ctx.w);
    if (!d.ok)
        throw precondition_error(std::string(what) +
                                 ": determinant with the radial field is not divisible by h0 "
                                 "at degree " + std::to_string(d.fail_degree) +
                                 " (non-logarithmic input)");
    return d.quotient;
}

} // namespace

LogBasis make_log_basis(const QHContext& ctx, const VField& x0)
{
    if (x0.is_zero()) throw precondition_error("initial field is zero");
    auto deg = field_qh_degree(x0, ctx.w);
    if (!deg) throw precondition_error("initial field is not quasi-homogeneous");
    if (!is_logarithmic(x0, ctx))
        throw precondition_error("initial field does not leave the separatrix invariant");
    Poly om = omega_pair(x0, radial_field(ctx.w), ctx, "basis check");
    auto omdeg = om.qh_degree(ctx.w);
    if (om.is_zero() || *omdeg != 0)
        throw precondition_error("(X0, R) is not a basis of the logarithmic fields: "
                                 "det(X0,R)/h0 is not a nonzero constant");
    LogBasis basis;
    basis.x0 = x0;
    basis.radial = radial_field(ctx.w);
    basis.omega_const = om.constant_term();
    basis.delta0 = *deg;
    if (basis.delta0 != ctx.delta0)
        throw internal_error("field degree disagrees with d0 - p1 - p2");
    return basis;
}

LogBasis hamiltonian_basis(const QHContext& ctx)
{
    return make_log_basis(ctx, hamiltonian_x0(ctx));
}

LogField to_log_basis(const VField& X, const LogBasis& basis, const QHContext& ctx)
{
    Rational inv = Rational(1) / basis.omega_const;
    Poly a = omega_pair(X, basis.radial, ctx, "to_log_basis").scaled(inv);
    Poly b = omega_pair(basis.x0, X, ctx, "to_log_basis").scaled(inv);
    return {a, b};
}

VField from_log_basis(const LogField& lf, const LogBasis& basis, const QHContext&)
{
    return multiply(lf.a, basis.x0) + multiply(lf.b, basis.radial);
}

LogForm sharp(const VField& X, const LogBasis& basis, const QHContext& ctx)
{
    LogField lf = to_log_basis(X, basis, ctx);
    return {lf.a, lf.b};
}

VField flat(const LogForm& om, const LogBasis& basis, const QHContext& ctx)
{
    return from_log_basis({om.c0, om.cR}, basis, ctx);
}

Poly pairing(const LogForm& om, const LogField& X)
{
    return om.c0 * X.b - om.cR * X.a;
}

LogForm differential(const Poly& f, const LogBasis& basis, const QHContext& ctx)
{
    return {f.radial(ctx.w), -basis.x0.apply(f)};
}

} // namespace qhnf
