#include "qhnf/milnor.hpp"

#include "qhnf/linalg.hpp"

namespace qhnf {

std::pair<Poly, Poly> jacobian_ideal(const QHContext& ctx)
{
    if (!(ctx.h == ctx.h0))
        throw precondition_error("Jacobian-ideal pipeline requires h = h0");
    return {ctx.h.dx(), ctx.h.dy()};
}

int socle_bound(const QHContext& ctx)
{
    return 2 * ctx.delta - 2 * ctx.w.p1 - 2 * ctx.w.p2;
}

Rational milnor_number_expected(const QHContext& ctx)
{
    return Rational(ctx.delta - ctx.w.p1) * Rational(ctx.delta - ctx.w.p2) /
           (Rational(ctx.w.p1) * Rational(ctx.w.p2));
}

std::vector<Exp> ideal_complement_slice(const QHContext& ctx, int degree)
{
    auto [hx, hy] = jacobian_ideal(ctx);
    std::vector<Exp> monos = slice_monomials(ctx.w, degree);
    if (monos.empty()) return {};
    SpanBuilder span(static_cast<int>(monos.size()));
    auto push_multiples = [&](const Poly& gen) {
        auto gdeg = gen.qh_degree(ctx.w);
        if (!gdeg) return;
        for (const Exp& m : slice_monomials(ctx.w, degree - *gdeg))
            span.add(coeff_vector(Poly::monomial(m, 1) * gen, monos));
    };
    push_multiples(hx);
    push_multiples(hy);
    std::vector<Exp> complement;
    for (std::size_t i = 0; i < monos.size(); ++i) {
        std::vector<Rational> e(monos.size(), Rational(0));
        e[i] = 1;
        if (span.add(e)) complement.push_back(monos[i]);
    }
    return complement;
}

bool is_isolated(const QHContext& ctx)
{
    if (!(ctx.h == ctx.h0)) return false;
    int B = socle_bound(ctx);
    for (int m = B + 1; m <= B + ctx.w.p1 + ctx.w.p2; ++m)
        if (!ideal_complement_slice(ctx, m).empty()) return false;
    // cross-check against the weighted count
    Rational mu_expected = milnor_number_expected(ctx);
    long mu = 0;
    for (int m = 0; m <= B; ++m) mu += static_cast<long>(ideal_complement_slice(ctx, m).size());
    return Rational(mu) == mu_expected;
}

CokerBasis milnor_basis(const QHContext& ctx)
{
    if (!is_isolated(ctx))
        throw precondition_error(
            "h has a non-isolated singularity; the Milnor-basis pipeline requires an "
            "isolated quasi-homogeneous singularity with h = h0");
    CokerBasis basis;
    int B = socle_bound(ctx);
    for (int m = 0; m <= B; ++m) {
        for (const Exp& a : ideal_complement_slice(ctx, m)) {
            basis.monomials.push_back(a);
            basis.degrees.push_back(m);
        }
    }
    basis.mu = static_cast<int>(basis.monomials.size());
    if (basis.mu == 0 || !(basis.monomials.front() == Exp{0, 0}))
        throw internal_error("Milnor basis does not start with the constant monomial");
    return basis;
}

} // namespace qhnf
