#include "qhnf/homological.hpp"

#include <algorithm>
#include <numeric>

#include "qhnf/linalg.hpp"

namespace qhnf {

namespace {

bool diagonal_coefficients(const VField& x0, Rational& lx, Rational& ly)
{
    lx = 0;
    ly = 0;
    for (const auto& [m, c] : x0.P.terms()) {
        if (m == Exp{1, 0})
            lx = c;
        else
            return false;
    }
    for (const auto& [m, c] : x0.Q.terms()) {
        if (m == Exp{0, 1})
            ly = c;
        else
            return false;
    }
    return !(lx == 0 && ly == 0);
}

// primitive nonnegative exponent pair annihilated by (lx, ly), if any
bool kernel_ray(const Rational& lx, const Rational& ly, Exp& sigma)
{
    if (lx == 0) {
        sigma = {1, 0};
        return true;
    }
    if (ly == 0) {
        sigma = {0, 1};
        return true;
    }
    Rational ratio = -ly / lx; // a/b for a*lx + b*ly = 0
    if (ratio <= 0) return false;
    Integer num = numerator(ratio), den = denominator(ratio);
    sigma = {static_cast<int>(num), static_cast<int>(den)};
    return true;
}

} // namespace

CokerStructure analyze_cokernel(const QHContext& ctx, const VField& x0)
{
    CokerStructure st;
    st.basis = make_log_basis(ctx, x0);

    VField ham = hamiltonian_x0(ctx);
    if (x0 == ham && ctx.h == ctx.h0 && is_isolated(ctx)) {
        st.mode = BasisMode::structured;
        st.coker = milnor_basis(ctx);
        st.power = ctx.h;
        st.power_deg = ctx.delta;
        st.has_power = true;
        return st;
    }

    Rational lx, ly;
    if (diagonal_coefficients(x0, lx, ly)) {
        st.mode = BasisMode::diagonal;
        st.diag_x = lx;
        st.diag_y = ly;
        st.coker.monomials = {Exp{0, 0}};
        st.coker.degrees = {0};
        st.coker.mu = 1;
        Exp sigma;
        if (kernel_ray(lx, ly, sigma)) {
            st.power = Poly::monomial(sigma, 1);
            st.power_deg = pdeg(sigma, ctx.w);
            st.has_power = true;
        }
        return st;
    }

    st.mode = BasisMode::generic;
    return st;
}

void CokerElement::add(int i, int j, const Rational& v)
{
    if (v == 0) return;
    auto key = std::make_pair(i, j);
    auto it = c.find(key);
    if (it == c.end()) {
        c.emplace(key, v);
    } else {
        it->second += v;
        if (it->second == 0) c.erase(it);
    }
}

Poly materialize(const CokerElement& e, const CokerStructure& st, const QHContext& ctx)
{
    Poly out;
    for (const auto& [key, v] : e.c) {
        auto [i, j] = key;
        Poly t = Poly::monomial(st.coker.monomials[static_cast<std::size_t>(i)], v);
        if (j > 0) {
            if (!st.has_power) throw internal_error("coker element with power but no power object");
            t = t * pow_truncated(st.power, j, ctx.w, ctx.K);
        }
        out += t.truncated(ctx.w, ctx.K);
    }
    return out;
}

int structured_complement_count(const CokerStructure& st, int n)
{
    int count = 0;
    if (!st.has_power) {
        for (int d : st.coker.degrees)
            if (d == n) ++count;
        return count;
    }
    for (int d : st.coker.degrees)
        if (n >= d && (n - d) % st.power_deg == 0) ++count;
    return count;
}

namespace {

// complement slots (i, j) with pdeg(a_i) + j*power_deg == n
std::vector<std::pair<int, int>> complement_slots(const CokerStructure& st, int n)
{
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < st.coker.monomials.size(); ++i) {
        int d = st.coker.degrees[i];
        if (d == n) {
            out.push_back({static_cast<int>(i), 0});
        } else if (st.has_power && n > d && (n - d) % st.power_deg == 0) {
            out.push_back({static_cast<int>(i), (n - d) / st.power_deg});
        }
    }
    return out;
}

struct SliceSolve {
    Poly b;
    std::vector<std::pair<std::pair<int, int>, Rational>> elem; // structured slots
    Poly remainder;
};

SliceSolve solve_slice_structured(const Poly& beta_n, int n, const CokerStructure& st,
                                  const QHContext& ctx)
{
    SliceSolve out;
    const Weights& w = ctx.w;
    int m = n - ctx.delta0;
    std::vector<Exp> rows = slice_monomials(w, n);
    std::vector<Exp> src = (m >= 0) ? slice_monomials(w, m) : std::vector<Exp>{};
    auto slots = complement_slots(st, n);

    int img_cols = static_cast<int>(src.size());
    int cols = img_cols + static_cast<int>(slots.size());
    Mat A(static_cast<int>(rows.size()), cols);
    for (int cidx = 0; cidx < img_cols; ++cidx) {
        Poly im = st.basis.x0.apply(Poly::monomial(src[static_cast<std::size_t>(cidx)], 1));
        auto v = coeff_vector(im, rows);
        for (int r = 0; r < A.rows; ++r) A.at(r, cidx) = v[static_cast<std::size_t>(r)];
    }
    for (std::size_t s = 0; s < slots.size(); ++s) {
        auto [i, j] = slots[s];
        Poly cp = Poly::monomial(st.coker.monomials[static_cast<std::size_t>(i)], 1);
        if (j > 0) cp = cp * pow_truncated(st.power, j, w, n);
        auto v = coeff_vector(cp, rows);
        for (int r = 0; r < A.rows; ++r) A.at(r, img_cols + static_cast<int>(s)) = v[static_cast<std::size_t>(r)];
    }

    // direct-sum check of the claimed structure on this slice
    {
        Mat img(A.rows, img_cols);
        for (int r = 0; r < A.rows; ++r)
            for (int c = 0; c < img_cols; ++c) img.at(r, c) = A.at(r, c);
        int r_img = rank(img);
        if (r_img + static_cast<int>(slots.size()) != static_cast<int>(rows.size()))
            throw internal_error("cokernel structure mismatch at degree " + std::to_string(n) +
                                 ": rank " + std::to_string(r_img) + " + " +
                                 std::to_string(slots.size()) + " complement slots != " +
                                 std::to_string(rows.size()));
    }

    auto rhs = coeff_vector(beta_n, rows);
    auto x = solve(A, rhs);
    if (!x) throw internal_error("homological slice solve failed at degree " + std::to_string(n));

    for (int cidx = 0; cidx < img_cols; ++cidx)
        out.b.add_term(src[static_cast<std::size_t>(cidx)], (*x)[static_cast<std::size_t>(cidx)]);
    // no kernel component in the particular solution
    if (m >= 0 && m % ctx.delta == 0 && !out.b.is_zero()) {
        Poly ker = pow_truncated(ctx.h, m / ctx.delta, w, m);
        auto kv = coeff_vector(ker, src);
        auto bv = coeff_vector(out.b, src);
        Rational dot(0), nrm(0);
        for (std::size_t i = 0; i < kv.size(); ++i) {
            dot += kv[i] * bv[i];
            nrm += kv[i] * kv[i];
        }
        if (nrm != 0) out.b -= ker.scaled(dot / nrm);
    }
    for (std::size_t s = 0; s < slots.size(); ++s) {
        Rational cv = (*x)[static_cast<std::size_t>(img_cols) + s];
        if (cv != 0) out.elem.push_back({slots[s], cv});
    }
    Poly rem;
    for (auto& [slot, cv] : out.elem) {
        Poly cp = Poly::monomial(st.coker.monomials[static_cast<std::size_t>(slot.first)], cv);
        if (slot.second > 0) cp = cp * pow_truncated(st.power, slot.second, w, n);
        rem += cp;
    }
    out.remainder = rem;
    return out;
}

SliceSolve solve_slice_diagonal(const Poly& beta_n, int n, const CokerStructure& st,
                                const QHContext& ctx)
{
    SliceSolve out;
    for (const auto& [mono, cv] : beta_n.terms()) {
        Rational lambda = st.diag_x * mono.ex + st.diag_y * mono.ey;
        if (lambda == 0) {
            if (!st.has_power)
                throw internal_error("diagonal kernel monomial without a kernel ray");
            int j = (st.power_deg > 0) ? pdeg(mono, ctx.w) / st.power_deg : 0;
            out.elem.push_back({{0, j}, cv});
            out.remainder.add_term(mono, cv);
        } else {
            out.b.add_term(mono, cv / lambda);
        }
    }
    (void)n;
    return out;
}

SliceSolve solve_slice_generic(const Poly& beta_n, int n, const CokerStructure& st,
                               const QHContext& ctx)
{
    SliceSolve out;
    const Weights& w = ctx.w;
    int m = n - ctx.delta0;
    std::vector<Exp> rows = slice_monomials(w, n);
    std::vector<Exp> src = (m >= 0) ? slice_monomials(w, m) : std::vector<Exp>{};

    // greedy complement in canonical order against the image span
    SpanBuilder span(static_cast<int>(rows.size()));
    std::vector<std::vector<Rational>> img_vecs;
    for (const Exp& s : src) {
        auto v = coeff_vector(st.basis.x0.apply(Poly::monomial(s, 1)), rows);
        img_vecs.push_back(v);
        span.add(v);
    }
    std::vector<Exp> complement;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<Rational> e(rows.size(), Rational(0));
        e[i] = 1;
        if (span.add(e)) complement.push_back(rows[i]);
    }

    int img_cols = static_cast<int>(src.size());
    Mat A(static_cast<int>(rows.size()), img_cols + static_cast<int>(complement.size()));
    for (int c = 0; c < img_cols; ++c)
        for (int r = 0; r < A.rows; ++r) A.at(r, c) = img_vecs[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    for (std::size_t s = 0; s < complement.size(); ++s) {
        auto v = coeff_vector(Poly::monomial(complement[s], 1), rows);
        for (int r = 0; r < A.rows; ++r) A.at(r, img_cols + static_cast<int>(s)) = v[static_cast<std::size_t>(r)];
    }
    auto x = solve(A, coeff_vector(beta_n, rows));
    if (!x) throw internal_error("generic slice solve failed at degree " + std::to_string(n));
    for (int c = 0; c < img_cols; ++c) out.b.add_term(src[static_cast<std::size_t>(c)], (*x)[static_cast<std::size_t>(c)]);
    for (std::size_t s = 0; s < complement.size(); ++s)
        out.remainder.add_term(complement[s], (*x)[static_cast<std::size_t>(img_cols) + s]);
    return out;
}

} // namespace

SolveResult solve_x0(const Poly& beta, const CokerStructure& st, const QHContext& ctx)
{
    SolveResult res;
    res.structure_known = (st.mode != BasisMode::generic);
    for (auto& [n, beta_n] : beta.truncated(ctx.w, ctx.K).qh_components(ctx.w)) {
        SliceSolve s;
        switch (st.mode) {
        case BasisMode::structured: s = solve_slice_structured(beta_n, n, st, ctx); break;
        case BasisMode::diagonal: s = solve_slice_diagonal(beta_n, n, st, ctx); break;
        case BasisMode::generic: s = solve_slice_generic(beta_n, n, st, ctx); break;
        }
        res.b += s.b;
        res.remainder += s.remainder;
        for (auto& [slot, cv] : s.elem) res.elem.add(slot.first, slot.second, cv);
    }
    return res;
}

std::pair<Poly, Poly> division_lemma(const Poly& f, const CokerStructure& st, const QHContext& ctx)
{
    if (st.mode != BasisMode::structured)
        throw precondition_error("division lemma requires the isolated Hamiltonian pipeline");
    const Weights& w = ctx.w;
    auto [hx, hy] = jacobian_ideal(ctx);
    Poly a_out, b_out;
    for (auto& [n, fn] : f.truncated(w, ctx.K).qh_components(w)) {
        std::vector<Exp> rows = slice_monomials(w, n);
        // membership in the Jacobian ideal, slice-wise
        {
            SpanBuilder span(static_cast<int>(rows.size()));
            for (const Exp& m : slice_monomials(w, n - (ctx.delta - w.p1)))
                span.add(coeff_vector(Poly::monomial(m, 1) * hx, rows));
            for (const Exp& m : slice_monomials(w, n - (ctx.delta - w.p2)))
                span.add(coeff_vector(Poly::monomial(m, 1) * hy, rows));
            if (!span.contains(coeff_vector(fn, rows)))
                throw precondition_error("division lemma: input is outside the Jacobian ideal "
                                         "at degree " + std::to_string(n));
        }
        int ma = n - ctx.delta;
        int mb = n - ctx.delta0;
        std::vector<Exp> acols = (ma >= 0) ? slice_monomials(w, ma) : std::vector<Exp>{};
        std::vector<Exp> bcols = (mb >= 0) ? slice_monomials(w, mb) : std::vector<Exp>{};
        Mat A(static_cast<int>(rows.size()), static_cast<int>(acols.size() + bcols.size()));
        for (std::size_t c = 0; c < acols.size(); ++c) {
            auto v = coeff_vector(Poly::monomial(acols[c], 1) * ctx.h, rows);
            for (int r = 0; r < A.rows; ++r) A.at(r, static_cast<int>(c)) = v[static_cast<std::size_t>(r)];
        }
        for (std::size_t c = 0; c < bcols.size(); ++c) {
            auto v = coeff_vector(st.basis.x0.apply(Poly::monomial(bcols[c], 1)), rows);
            for (int r = 0; r < A.rows; ++r)
                A.at(r, static_cast<int>(acols.size() + c)) = v[static_cast<std::size_t>(r)];
        }
        auto x = solve(A, coeff_vector(fn, rows));
        if (!x)
            throw internal_error("division lemma: slice system unsolvable at degree " +
                                 std::to_string(n));
        for (std::size_t c = 0; c < acols.size(); ++c) a_out.add_term(acols[c], (*x)[c]);
        for (std::size_t c = 0; c < bcols.size(); ++c) b_out.add_term(bcols[c], (*x)[acols.size() + c]);
    }
    return {a_out, b_out};
}

CokerElement connection_apply(const CokerElement& e, const CokerStructure& st, const QHContext& ctx)
{
    CokerElement out;
    for (const auto& [key, v] : e.c) {
        auto [i, j] = key;
        if (j < 1)
            throw precondition_error("connection acts on multiples of h only "
                                     "(found a power-0 term)");
        Rational ri = Rational(st.coker.degrees[static_cast<std::size_t>(i)]) / ctx.delta;
        out.add(i, j - 1, (Rational(j) + ri) * v);
    }
    return out;
}

std::vector<Poly> kernel_slice(int m, const CokerStructure& st, const QHContext& ctx)
{
    const Weights& w = ctx.w;
    std::vector<Exp> src = slice_monomials(w, m);
    std::vector<Exp> rows = slice_monomials(w, m + ctx.delta0);
    Mat A(static_cast<int>(rows.size()), static_cast<int>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
        auto v = coeff_vector(st.basis.x0.apply(Poly::monomial(src[c], 1)), rows);
        for (int r = 0; r < A.rows; ++r) A.at(r, static_cast<int>(c)) = v[static_cast<std::size_t>(r)];
    }
    std::vector<Poly> out;
    for (const auto& kv : kernel_basis(A)) {
        Poly p;
        for (std::size_t c = 0; c < src.size(); ++c) p.add_term(src[c], kv[c]);
        // normalize: first canonical-order coefficient = 1
        for (const Exp& mono : src) {
            Rational lead = p.coeff(mono);
            if (lead != 0) {
                p = p.scaled(Rational(1) / lead);
                break;
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace qhnf
