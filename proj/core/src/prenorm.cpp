#include "qhnf/prenorm.hpp"

#include <algorithm>

namespace qhnf {

bool NormalForm::dissipative_is_zero() const
{
    if (structure.mode == BasisMode::generic) return raw_dissipative.is_zero();
    return std::all_of(d.begin(), d.end(), [](const Series& s) { return s.is_zero(); });
}

int NormalForm::power_len(const QHContext& ctx, int basis_index) const
{
    if (!structure.has_power) return 1;
    int deg = structure.coker.degrees[static_cast<std::size_t>(basis_index)];
    return (ctx.K - deg) / structure.power_deg + 1;
}

Poly NormalForm::dissipative_poly(const QHContext& ctx) const
{
    if (structure.mode == BasisMode::generic) return raw_dissipative;
    Poly out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].is_zero()) continue;
        Poly mono = Poly::monomial(structure.coker.monomials[i], 1);
        Poly acc;
        for (int j = 0; j < d[i].length(); ++j) {
            if (d[i][j] == 0) continue;
            Poly t = (j == 0) ? Poly::constant(d[i][j])
                              : pow_truncated(structure.power, j, ctx.w, ctx.K).scaled(d[i][j]);
            acc += t;
        }
        out += (mono * acc).truncated(ctx.w, ctx.K);
    }
    return out;
}

VField NormalForm::materialize(const QHContext& ctx) const
{
    Poly a = Poly::constant(1);
    if (has_field_part) {
        for (int j = 0; j < field_part.length(); ++j) {
            if (field_part[j] == 0) continue;
            a += pow_truncated(structure.power, j, ctx.w, ctx.K).scaled(field_part[j]);
        }
    }
    VField out = multiply(a, structure.basis.x0) +
                 multiply(dissipative_poly(ctx), structure.basis.radial);
    return field_truncate(out, ctx.w, ctx.K);
}

VField exp_conjugate(const VField& Z, const VField& X, const Weights& w, int K)
{
    if (!Z.is_zero() && field_order(Z, w) < 1)
        throw precondition_error("exponential generator must have order >= 1");
    VField out = field_truncate(X, w, K);
    VField term = out;
    for (int k = 1;; ++k) {
        term = field_truncate(lie_bracket(Z, term), w, K).scaled(Rational(1, k));
        if (term.is_zero()) break;
        out = out + term;
        if (k > 4 * (K + 1)) throw internal_error("adjoint series failed to terminate");
    }
    return out;
}

LogField perturbation_coordinates(const VField& X, const CokerStructure& st, const QHContext& ctx)
{
    if (!is_logarithmic(X, ctx))
        throw precondition_error("input field does not leave the separatrix invariant "
                                 "(X(h0) is not a multiple of h0)");
    VField low = field_component(X, ctx.w, field_order(X, ctx.w));
    if (!(low == st.basis.x0))
        throw precondition_error("lowest quasi-homogeneous part of the input differs from X0");
    LogField lf = to_log_basis(field_truncate(X, ctx.w, ctx.K), st.basis, ctx);
    if (lf.a.constant_term() != 1)
        throw internal_error("integrable coefficient does not start at 1");
    int bord = lf.b.porder(ctx.w);
    if (bord != kOrderInf && bord <= ctx.delta0)
        throw precondition_error("perturbation order too low: dissipative component has order " +
                                 std::to_string(bord) + " <= delta0 = " +
                                 std::to_string(ctx.delta0));
    return lf;
}

namespace {

NormalForm empty_normal_form(const CokerStructure& st, const QHContext& ctx)
{
    NormalForm nf;
    nf.structure = st;
    if (st.mode != BasisMode::generic) {
        for (int i = 0; i < st.coker.mu; ++i) {
            int len = st.has_power ? (ctx.K - st.coker.degrees[static_cast<std::size_t>(i)]) /
                                             st.power_deg +
                                         1
                                   : 1;
            nf.d.push_back(Series(std::max(len, 1)));
        }
    }
    return nf;
}

void accumulate_remainder(NormalForm& nf, const SolveResult& sol)
{
    if (nf.structure.mode == BasisMode::generic) {
        nf.raw_dissipative += sol.remainder;
        return;
    }
    for (const auto& [key, v] : sol.elem.c) {
        auto [i, j] = key;
        if (j >= nf.d[static_cast<std::size_t>(i)].length())
            throw internal_error("remainder power outside the truncation window");
        nf.d[static_cast<std::size_t>(i)][j] += v;
    }
}

} // namespace

PrenormResult prenormalize_foliation(const VField& X, const CokerStructure& st,
                                     const QHContext& ctx)
{
    perturbation_coordinates(X, st, ctx); // validates
    const Weights& w = ctx.w;
    PrenormResult res;
    res.nf = empty_normal_form(st, ctx);
    res.script.fibered = true;

    VField cur = field_truncate(X, w, ctx.K);
    Poly unit = Poly::constant(1);

    for (int k = ctx.delta0 + 1; k <= ctx.K; ++k) {
        VField model = multiply(unit, st.basis.x0) +
                       multiply((unit * res.nf.dissipative_poly(ctx)).truncated(w, ctx.K),
                                st.basis.radial);
        VField rest = field_truncate(cur - model, w, ctx.K);
        if (rest.is_zero()) break;
        int ord = field_order(rest, w);
        if (ord < k) throw internal_error("prenormalization lost degrees below " + std::to_string(k));
        if (ord > k) continue;
        LogField tk = to_log_basis(field_component(rest, w, k), st.basis, ctx);
        SolveResult sol = solve_x0(tk.b, st, ctx);
        if (!sol.b.is_zero()) {
            VField gen = multiply(sol.b, st.basis.radial);
            res.script.generators.push_back(gen);
            cur = exp_conjugate(gen, cur, w, ctx.K);
        }
        unit += tk.a + sol.b.scaled(ctx.delta0);
        accumulate_remainder(res.nf, sol);
    }
    res.script.unit = unit;
    return res;
}

PrenormResult prenormalize_field(const VField& X, const CokerStructure& st, const QHContext& ctx)
{
    if (ctx.delta0 != 0)
        throw precondition_error("field prenormalization supports delta0 = 0 only "
                                 "(initial degree here: " + std::to_string(ctx.delta0) + ")");
    if (st.mode == BasisMode::generic)
        throw precondition_error("field prenormalization needs a structured or diagonal cokernel");
    perturbation_coordinates(X, st, ctx);
    const Weights& w = ctx.w;
    PrenormResult res;
    res.nf = empty_normal_form(st, ctx);
    res.nf.has_field_part = true;
    res.nf.field_part = Series(res.nf.power_len(ctx, 0));
    res.script.fibered = false;

    VField cur = field_truncate(X, w, ctx.K);
    for (int k = 1; k <= ctx.K; ++k) {
        VField rest = field_truncate(cur - res.nf.materialize(ctx), w, ctx.K);
        if (rest.is_zero()) break;
        int ord = field_order(rest, w);
        if (ord < k) throw internal_error("field prenormalization lost degrees below " + std::to_string(k));
        if (ord > k) continue;
        LogField tk = to_log_basis(field_component(rest, w, k), st.basis, ctx);
        SolveResult sol_a = solve_x0(tk.a, st, ctx);
        SolveResult sol_b = solve_x0(tk.b, st, ctx);
        VField gen = multiply(sol_a.b, st.basis.x0) + multiply(sol_b.b, st.basis.radial);
        if (!gen.is_zero()) {
            res.script.generators.push_back(gen);
            cur = exp_conjugate(gen, cur, w, ctx.K);
            if (!sol_a.b.is_zero()) res.script.fibered = false;
        }
        for (const auto& [key, v] : sol_a.elem.c) {
            if (key.second >= res.nf.field_part.length())
                throw internal_error("field part power outside the truncation window");
            res.nf.field_part[key.second] += v;
        }
        accumulate_remainder(res.nf, sol_b);
    }
    res.script.unit = Poly::constant(1);
    return res;
}

std::string VerifyReport::describe() const
{
    if (ok) return "conjugacy verified";
    return "conjugacy mismatch at degree " + std::to_string(degree) + ", monomial " +
           monomial_to_string(monomial) + ", component " + component;
}

VerifyReport verify_conjugacy(const VField& X, const ConjugationScript& script,
                              const NormalForm& nf, const QHContext& ctx, int K)
{
    const Weights& w = ctx.w;
    VField lhs = field_truncate(X, w, K);
    for (const VField& Z : script.generators) lhs = exp_conjugate(Z, lhs, w, K);
    VField rhs = multiply(script.unit, nf.materialize(ctx));
    VField diff = field_truncate(lhs - rhs, w, K);
    VerifyReport rep;
    if (diff.is_zero()) return rep;
    rep.ok = false;
    int od = field_order(diff, w);
    rep.degree = od;
    VField part = field_component(diff, w, od);
    if (!part.P.is_zero()) {
        rep.component = "dx";
        rep.monomial = part.P.terms().front().first;
    } else {
        rep.component = "dy";
        rep.monomial = part.Q.terms().front().first;
    }
    return rep;
}

} // namespace qhnf
