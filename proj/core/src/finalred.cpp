#include "qhnf/finalred.hpp"

#include <algorithm>

namespace qhnf {

namespace {

Series field_series(const OneVarField& v, int len)
{
    Series f(len);
    for (int t = 0; t < v.u.length() && v.order + t < len; ++t) f[v.order + t] = v.u[t];
    return f;
}

OneVarField field_from_series(const Series& f, int cover)
{
    int ord = f.order();
    if (ord == kOrderInf) throw precondition_error("one-variable field is zero");
    OneVarField v;
    v.coverExponent = cover;
    v.order = ord;
    v.u = Series(f.length() - ord);
    for (int t = 0; t + ord < f.length(); ++t) v.u[t] = f[ord + t];
    return v;
}

} // namespace

Rational residue(const OneVarField& v)
{
    if (v.u.at(0) == 0) throw precondition_error("one-variable field needs a nonzero lead");
    Series inv = inverse_unit(v.u, std::max(v.u.length(), v.order));
    return inv.at(v.order - 1);
}

OneVarNormalization normalize_onevar(const OneVarField& v, int phi_len)
{
    if (v.u.at(0) == 0) throw precondition_error("one-variable field needs a nonzero lead");
    if (v.order < 2)
        throw precondition_error("one-variable normalization needs order >= 2, got " +
                                 std::to_string(v.order));
    const int N = v.order;
    const Rational a = v.u[0];
    const int data_len = N + v.u.length(); // coefficients of z^N .. z^(data_len-1) are known
    const int smax = v.u.length() - 1;     // relative slots inside the data window
    const int L = std::max(data_len, phi_len);

    Series cur = field_series(v, L);
    Series phi = Series::identity(L + 1);

    OneVarNormalization out;
    out.m = N;
    out.lambda_in_window = (N - 1 <= smax);
    // the residue is invariant under every step below, so the rational target
    // can be fixed up front; this also makes the procedure idempotent
    Rational Lambda = out.lambda_in_window ? a * residue(v) : Rational(0);
    out.lambda = Lambda / a;

    Series target(L);
    {
        Series den = Series::one(L);
        if (N - 1 < L) den[N - 1] = Lambda;
        Series expanded = inverse_unit(den, L);
        for (int i = 0; i + N < L; ++i) target[N + i] = a * expanded[i];
    }
    // one ascending pass; the resonant slot s = N-1 is forced to match by
    // residue invariance and is checked below
    for (int s = 1; s <= smax; ++s) {
        if (s == N - 1) continue;
        Rational diff = target.at(N + s) - cur.at(N + s);
        if (diff == 0) continue;
        Series step = Series::identity(L + 1);
        step[s + 1] = diff / (a * (N - s - 1));
        cur = gauge_transform(cur, step, L);
        phi = compose(phi, step, L + 1);
    }
    for (int i = 0; i < data_len; ++i)
        if (cur[i] != target[i])
            throw internal_error("one-variable normalization missed its target at z^" +
                                 std::to_string(i));
    out.phi = phi;
    out.normal = field_from_series(target.resized(data_len), v.coverExponent);
    return out;
}

NormalForm fibered_action(const NormalForm& nf, const Series& psi, const QHContext& ctx)
{
    if (psi.at(0) != 0 || psi.at(1) != 1)
        throw precondition_error("fibered gauge must be tangent to the identity");
    const CokerStructure& st = nf.structure;
    if (st.mode == BasisMode::generic)
        throw precondition_error("fibered action needs a structured or diagonal prenormal form");
    if (!st.has_power) return nf; // no coefficient data to move

    NormalForm out = nf;
    int L = psi.length();
    Series W(std::max(L - 1, 1)); // psi/sigma, a unit
    for (int i = 0; i + 1 < L; ++i) W[i] = psi[i + 1];
    Series dpsi = derive(psi);

    for (std::size_t i = 0; i < nf.d.size(); ++i) {
        if (nf.d[i].is_zero()) continue;
        int len = nf.d[i].length();
        int qi = st.coker.degrees[i] - ctx.delta0;
        Rational e = Rational(st.power_deg + qi) / st.power_deg;
        Series t = compose(nf.d[i], psi, len);
        t = mul(t, pow_unit(W.resized(len), e, len), len);
        t = mul(t, inverse_unit(dpsi.resized(len), len), len);
        out.d[i] = t;
    }
    if (nf.has_field_part && !nf.field_part.is_zero()) {
        if (ctx.delta0 != 0)
            throw internal_error("field part with nonzero initial degree");
        int len = nf.field_part.length();
        Series a = Series::one(len) + nf.field_part;
        out.field_part = compose(a, psi, len) - Series::one(len);
    }
    return out;
}

Poly fibered_generator(const Series& psi, const Poly& sigma, int sigma_deg, const QHContext& ctx)
{
    Series v = flow_generator(psi, psi.length());
    Poly b;
    for (int j = 2; j < v.length(); ++j) {
        if (v[j] == 0) continue;
        b += pow_truncated(sigma, j - 1, ctx.w, ctx.K).scaled(v[j] / sigma_deg);
    }
    return b;
}

namespace {

// lift d (series in sigma, order m) to the cover z^cover = sigma:
// (1/cover) * z^(1 + q + cover*m) * u(z), u supported on multiples of cover.
OneVarField lift_to_cover(const Series& d, int m, int q, int cover)
{
    OneVarField v;
    v.coverExponent = cover;
    v.order = 1 + q + cover * m;
    int relmax = cover * (d.length() - 1 - m);
    v.u = Series(relmax + 1);
    for (int j = m; j < d.length(); ++j) v.u[cover * (j - m)] = d[j] / cover;
    return v;
}

// phi = z * w(z^cover); returns psi(sigma) = sigma * w(sigma)^cover.
Series descend_gauge(const Series& phi_cover, int cover, int base_len)
{
    for (int i = 0; i < phi_cover.length(); ++i)
        if (phi_cover[i] != 0 && (i % cover) != (1 % cover))
            throw internal_error("cover gauge does not descend: stray coefficient at z^" +
                                 std::to_string(i));
    Series w(base_len);
    for (int k = 0; k < base_len && 1 + cover * k < phi_cover.length(); ++k)
        w[k] = phi_cover[1 + cover * k];
    Series wpow = pow_unit(w, Rational(cover), base_len);
    Series psi(base_len + 1);
    for (int i = 0; i < base_len; ++i) psi[i + 1] = wpow[i];
    return psi;
}

// expected lead * z^m / (1 + Lambda z^(m+n)) as a series of the given length
Series rational_form_series(const Rational& lead, const Rational& Lambda, int m, int n, int len)
{
    Series den = Series::one(len);
    if (m + n < len) den[m + n] = Lambda;
    Series expect = inverse_unit(den, len).scaled(lead);
    Series shifted(len);
    for (int j = 0; j + m < len; ++j) shifted[j + m] = expect[j];
    return shifted;
}

} // namespace

FinalReduceResult final_reduce(const NormalForm& nf, std::optional<int> pick,
                               const QHContext& ctx)
{
    FinalReduceResult res;
    res.nf = nf;
    const CokerStructure& st = nf.structure;
    if (st.mode == BasisMode::generic) {
        res.status = ReduceStatus::prenormal_only;
        return res;
    }
    if (nf.dissipative_is_zero()) {
        res.status = ReduceStatus::integrable;
        return res;
    }

    int index = -1;
    if (pick) {
        index = *pick;
        if (index < 0 || index >= static_cast<int>(nf.d.size()))
            throw precondition_error("pick index out of range");
        if (nf.d[static_cast<std::size_t>(index)].is_zero())
            throw precondition_error("picked coefficient d_" + std::to_string(index + 1) +
                                     " vanishes up to the truncation bound");
    } else {
        for (std::size_t i = 0; i < nf.d.size(); ++i) {
            if (!nf.d[i].is_zero()) {
                index = static_cast<int>(i);
                break;
            }
        }
    }

    const Series& di = nf.d[static_cast<std::size_t>(index)];
    int m = di.order();
    int qi = st.coker.degrees[static_cast<std::size_t>(index)] - ctx.delta0;
    int cover = st.power_deg;

    int base_len = 2;
    for (const Series& s : nf.d) base_len = std::max(base_len, s.length() + 1);

    OneVarField lifted = lift_to_cover(di, m, qi, cover);
    OneVarNormalization onv = normalize_onevar(lifted, cover * (base_len + 2));
    Series psi = descend_gauge(onv.phi, cover, base_len);

    NormalForm moved = fibered_action(nf, psi, ctx);

    Rational lead = di[m];
    Rational Lambda = lead * onv.lambda / cover; // denominator coefficient downstairs
    int n = 0;
    if (qi % cover == 0) {
        n = qi / cover;
    } else if (Lambda != 0) {
        throw internal_error("nonzero residue although the degree divisibility fails");
    }
    {
        const Series& got = moved.d[static_cast<std::size_t>(index)];
        if (!(got == rational_form_series(lead, Lambda, m, n, got.length())))
            throw internal_error("final reduction: transformed coefficient differs from the "
                                 "rational normal form");
    }

    FinalizedInfo fin;
    fin.index = index;
    fin.m = m;
    fin.n = n;
    fin.lambda = Lambda;
    fin.lead = lead;
    fin.lambda_in_window = onv.lambda_in_window;
    fin.stabilizer = qi + cover * m;
    moved.finalized = fin;

    res.nf = moved;
    if (!(psi == Series::identity(psi.length())))
        res.gauges.push_back(multiply(fibered_generator(psi, st.power, st.power_deg, ctx),
                                      st.basis.radial));
    res.status = (Lambda != 0) ? ReduceStatus::reduced_lambda_nonzero
                               : ReduceStatus::reduced_lambda_zero;
    return res;
}

FinalReduceResult field_final_reduce(const NormalForm& nf, const QHContext& ctx)
{
    if (!nf.has_field_part)
        throw precondition_error("field reduction needs a field prenormal form");
    if (ctx.delta0 != 0)
        throw precondition_error("field reduction supports delta0 = 0 only");
    const CokerStructure& st = nf.structure;
    if (st.mode == BasisMode::generic)
        throw precondition_error("field reduction needs a structured or diagonal cokernel");

    FinalReduceResult res;
    res.nf = nf;
    if (nf.dissipative_is_zero()) {
        res.status = ReduceStatus::integrable;
        return res;
    }

    const int dsig = st.power_deg;
    const Series& B = nf.d[0];
    const int m = B.order();
    const Rational lead = B[m];
    const int len = B.length();
    const int alen = nf.field_part.length();
    const int big = std::max(len, alen);

    // stage 1: the dissipative coefficient behaves as dsig * sigma * B(sigma) d/dsigma
    Series vB(len + 1);
    for (int j = 0; j < len; ++j) vB[j + 1] = dsig * B[j];
    OneVarNormalization onv = normalize_onevar(field_from_series(vB, 1), big + 3);
    Series psi = onv.phi.resized(big + 2);

    NormalForm moved = fibered_action(nf, psi, ctx);
    Rational Lambda = (dsig * lead) * onv.lambda; // denominator coefficient of the 1-d field
    if (!(moved.d[0] == rational_form_series(lead, Lambda, m, 0, len)))
        throw internal_error("field reduction: dissipative coefficient differs from the "
                             "rational normal form");
    if (!(psi == Series::identity(psi.length())))
        res.gauges.push_back(multiply(fibered_generator(psi, st.power, dsig, ctx),
                                      st.basis.radial));

    // stage 2: polynomial integrable coefficient. For the pure y dy initial
    // field the standard-coordinates coefficient A + B is the one truncated;
    // otherwise the log-basis coefficient A.
    bool axis = st.basis.x0.P.is_zero();
    Series A = Series::one(alen) + moved.field_part;
    Series Bfin = moved.d[0].resized(alen);
    Series T = axis ? A + Bfin : A;
    Series tail(alen);
    for (int j = m + 1; j < alen; ++j) tail[j - (m + 1)] = T.at(j);
    if (!tail.is_zero()) {
        Series den = Series::one(alen);
        if (m < alen) den[m] = Lambda;
        Series alpha = integrate(mul(tail, den, alen).scaled(Rational(1) / (dsig * lead)), alen);
        Poly alpha_poly;
        for (int j = 1; j < alpha.length(); ++j) {
            if (alpha[j] == 0) continue;
            alpha_poly += pow_truncated(st.power, j, ctx.w, ctx.K).scaled(alpha[j]);
        }
        res.gauges.push_back(multiply(alpha_poly, st.basis.x0));
        Series sa(alen); // dsig * sigma * alpha'
        Series da = derive(alpha).resized(alen);
        for (int j = 0; j + 1 < alen; ++j) sa[j + 1] = dsig * da[j];
        Series Anew = A - mul(sa, Bfin, alen);
        for (int j = m + 1; j < alen; ++j)
            if ((axis ? Anew.at(j) + Bfin.at(j) : Anew.at(j)) != 0)
                throw internal_error("field reduction: integrable tail survived at power " +
                                     std::to_string(j));
        A = Anew;
    }
    moved.field_part = A - Series::one(alen);

    FinalizedInfo fin;
    fin.index = 0;
    fin.m = m;
    fin.n = 0;
    fin.lambda = Lambda;
    fin.lead = lead;
    fin.lambda_in_window = onv.lambda_in_window;
    fin.stabilizer = dsig * m;
    moved.finalized = fin;
    res.nf = moved;
    res.status = (Lambda != 0) ? ReduceStatus::reduced_lambda_nonzero
                               : ReduceStatus::reduced_lambda_zero;
    return res;
}

} // namespace qhnf
