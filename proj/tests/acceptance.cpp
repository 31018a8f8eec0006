// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero when any of them fails. All checks are exact rational identities;
// the time limits are part of the criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qhnf/io.hpp"
#include "qhnf/linalg.hpp"

using namespace qhnf;
using oracles::Rng;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, double limit_seconds,
               const std::function<void()>& body)
{
    auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
        body();
    } catch (const std::exception& e) {
        failure = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty() && limit_seconds > 0 && secs > limit_seconds) {
        std::ostringstream os;
        os << "time limit exceeded: " << secs << " s > " << limit_seconds << " s";
        failure = os.str();
    }
    if (failure.empty()) {
        std::printf("[PASS] criterion %2d: %s (%.2f s)\n", number, label.c_str(), secs);
    } else {
        ++g_failures;
        std::printf("[FAIL] criterion %2d: %s -- %s\n", number, label.c_str(), failure.c_str());
    }
    std::fflush(stdout);
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw std::runtime_error(what);
}

Poly P(const std::string& s) { return parse_poly(s); }

struct Setup {
    QHContext ctx;
    CokerStructure st;
};

Setup cusp(int p, int q, int K)
{
    Poly h = Poly::monomial({0, p}, 1) - Poly::monomial({q, 0}, 1);
    QHContext ctx = make_context({p, q}, h, h, K);
    return {ctx, analyze_cokernel(ctx, hamiltonian_x0(ctx))};
}

Setup poincare_dulac(int p, int q, int K)
{
    Poly h = Poly::monomial({p, q}, 1);
    QHContext ctx = make_context({q, p}, h, P("x*y"), K);
    return {ctx, analyze_cokernel(ctx, hamiltonian_x0(ctx))};
}

std::string field_text(const Poly& f, const Weights& w) { return f.to_string(w); }

ProblemFile problem_for(const Setup& s, const VField& X, Pipeline pipe)
{
    ProblemFile p;
    p.w = s.ctx.w;
    p.h_text = s.ctx.h.to_string(s.ctx.w);
    p.h0_text = s.ctx.h0.to_string(s.ctx.w);
    p.dx_text = field_text(X.P, s.ctx.w);
    p.dy_text = field_text(X.Q, s.ctx.w);
    p.has_field = true;
    p.truncation = s.ctx.K;
    p.pipeline = pipe;
    return p;
}

// criterion 1
void cusp_milnor_data()
{
    ProblemFile p;
    p.w = {2, 3};
    p.h_text = "y^2 - x^3";
    p.truncation = 24;
    p.pipeline = Pipeline::cokernel;
    CommandOutcome out = cmd_cokernel(p);
    require(out.exit_code == 0, "cokernel command failed");
    require(out.report.rfind("mu=2; basis=1,x\n", 0) == 0,
            "cusp (2,3) report was: " + out.report);

    for (auto [pp, qq] : {std::pair{2, 5}, {3, 4}, {3, 5}}) {
        Setup c = cusp(pp, qq, 20);
        CokerBasis basis = milnor_basis(c.ctx);
        require(basis.mu == (pp - 1) * (qq - 1), "mu mismatch for cusp");
        std::set<std::pair<int, int>> got, want;
        for (const Exp& m : basis.monomials) got.insert({m.ex, m.ey});
        for (int k = 0; k <= qq - 2; ++k)
            for (int l = 0; l <= pp - 2; ++l) want.insert({k, l});
        require(got == want, "cusp basis is not the stated monomial range");
    }
}

// criterion 2
void cokernel_structure_oracle()
{
    Setup c = cusp(2, 3, 40);
    for (int m = 0; m <= 40; ++m) {
        int dim = static_cast<int>(slice_monomials(c.ctx.w, m + c.ctx.delta0).size());
        int rank = oracles::slice_rank(c.st.basis.x0, c.ctx, m);
        int count = structured_complement_count(c.st, m + c.ctx.delta0);
        require(dim - rank == count,
                "slot count mismatch at degree " + std::to_string(m));
    }
}

// criterion 3
void conjugacy_round_trip()
{
    Rng rng(20240811);
    Setup c = cusp(2, 3, 24);
    for (int run = 0; run < 100; ++run) {
        VField X = oracles::random_perturbation(rng, c.st, c.ctx);
        PrenormResult r = prenormalize_foliation(X, c.st, c.ctx);
        VerifyReport rep = verify_conjugacy(X, r.script, r.nf, c.ctx, c.ctx.K);
        require(rep.ok, "round trip failed on run " + std::to_string(run) + ": " +
                            rep.describe());
        for (const VField& Z : r.script.generators) {
            LogField lf = to_log_basis(Z, c.st.basis, c.ctx);
            require(lf.a.is_zero(), "non-fibered generator emitted");
        }
    }
}

// criterion 4
void poincare_dulac_shapes()
{
    Rng rng(404);
    for (auto [pp, qq] : {std::pair{1, 1}, {1, 2}, {2, 3}}) {
        Setup s = poincare_dulac(pp, qq, 6 * pp * qq); // three h-powers of room
        // foliation: prenormal form supported on powers of h times R
        VField Xf = oracles::random_perturbation(rng, s.st, s.ctx);
        PrenormResult pre = prenormalize_foliation(Xf, s.st, s.ctx);
        require(pre.nf.structure.coker.mu == 1, "cokernel basis is not {1}");
        require(pre.nf.structure.power == s.ctx.h, "power object is not h");
        require(verify_conjugacy(Xf, pre.script, pre.nf, s.ctx, s.ctx.K).ok,
                "foliation round trip failed");

        // field: final shape P_m(h) X0 + h^m/(1 + lambda h^m) R via certificate
        Poly b = s.ctx.h + oracles::random_poly(rng, s.ctx.w, s.ctx.delta + 1, s.ctx.K, 0.25);
        Poly a = oracles::random_poly(rng, s.ctx.w, 1, s.ctx.K, 0.2);
        VField X = s.st.basis.x0 + multiply(a, s.st.basis.x0) + multiply(b, s.st.basis.radial);
        ProblemFile p = problem_for(s, X, Pipeline::field);
        CommandOutcome out = cmd_normalize(p, "acceptance_pd_cert.json");
        require(out.exit_code == 0, "normalize failed");
        require(cmd_verify(p, load_certificate("acceptance_pd_cert.json")).exit_code == 0,
                "certificate did not verify");
        PrenormResult fp = prenormalize_field(X, s.st, s.ctx);
        FinalReduceResult fin = field_final_reduce(fp.nf, s.ctx);
        require(fin.nf.finalized.has_value(), "missing finalized record");
        int m = fin.nf.finalized->m;
        require(fin.nf.finalized->lead == 1, "seeded lead 1 was not preserved");
        // B = h^m/(1 + lambda h^m)
        Series den = Series::one(fin.nf.d[0].length());
        if (m < den.length()) den[m] = fin.nf.finalized->lambda;
        Series expect = inverse_unit(den, fin.nf.d[0].length());
        for (int j = 0; j + m < fin.nf.d[0].length(); ++j)
            require(fin.nf.d[0][j + m] == expect[j], "dissipative part is not the stated form");
        // A = P_m(h): polynomial of degree <= m
        for (int j = m + 1; j < fin.nf.field_part.length(); ++j)
            require(fin.nf.field_part[j] == 0, "integrable part not polynomial of degree <= m");
        // certificate check through the script
        ConjugationScript script = fp.script;
        for (const VField& g : fin.gauges) script.generators.push_back(g);
        require(verify_conjugacy(X, script, fin.nf, s.ctx, s.ctx.K).ok,
                "field certificate failed");
    }
}

// criterion 5
void saddle_node_bruno()
{
    QHContext ctx = make_context({1, 1}, P("x*y"), P("x*y"), 20);
    CokerStructure st = analyze_cokernel(ctx, VField{Poly::zero(), P("y")});
    VField X{P("x^2 + x^3 - 2*x^2*y + 1/2*x^5"), P("y + x*y - 3*x*y^2 + 1/3*x^2*y^2")};
    Setup s{ctx, st};
    ProblemFile p = problem_for(s, X, Pipeline::field);
    CommandOutcome out = cmd_normalize(p, "acceptance_sn_cert.json");
    require(out.exit_code == 0, "normalize failed");
    Certificate cert = load_certificate("acceptance_sn_cert.json");
    CommandOutcome v = cmd_verify(p, cert);
    require(v.exit_code == 0, "certificate verification failed: " + v.report);

    PrenormResult pre = prenormalize_field(X, st, ctx);
    FinalReduceResult fin = field_final_reduce(pre.nf, ctx);
    require(fin.nf.finalized.has_value(), "missing finalized record");
    int m = fin.nf.finalized->m;
    Rational lambda = fin.nf.finalized->lambda;
    require(fin.nf.finalized->lead == 1, "lead coefficient moved");
    // standard coordinates: P_m(x) y dy + x^(m+1)/(1 + lambda x^m) dx
    VField F = fin.nf.materialize(ctx);
    Poly ycoef = divide_exact(F.Q, P("y"), ctx.w).quotient;
    for (const auto& [mono, cf] : ycoef.terms()) {
        require(mono.ey == 0, "y-coefficient not a function of x");
        require(mono.ex <= m, "y-coefficient degree exceeds m");
    }
    Poly xcoef = divide_exact(F.P, P("x"), ctx.w).quotient;
    Series den = Series::one(ctx.K + 1);
    den[m] = lambda;
    Series expect = inverse_unit(den, ctx.K + 1);
    for (const auto& [mono, cf] : xcoef.terms()) require(mono.ey == 0, "x-coefficient mixed");
    for (int j = 0; j + m <= ctx.K - 1; ++j)
        require(xcoef.coeff({m + j, 0}) == expect[j], "x-coefficient is not the Bruno form");
}

// criterion 6
void residue_properties()
{
    Rng rng(606);
    for (int rep = 0; rep < 20; ++rep) {
        Rational c = oracles::random_nonzero_rational(rng);
        OneVarField v;
        v.order = 2;
        v.u = Series(10);
        v.u[0] = 1;
        v.u[1] = c;
        require(residue(v) == -c, "residue(z^2(1+cz)) != -c");
    }
    for (int rep = 0; rep < 20; ++rep) {
        int len = 16;
        int N = 2 + (rep % 4);
        Series f(len);
        f[N] = oracles::random_nonzero_rational(rng);
        for (int j = N + 1; j < len; ++j) f[j] = oracles::random_rational(rng);
        Series phi = Series::identity(len);
        for (int j = 2; j < len; ++j) phi[j] = oracles::random_rational(rng, 4, 4);
        Series g = gauge_transform(f, phi, len);
        OneVarField vf, vg;
        vf.order = N;
        vg.order = N;
        vf.u = Series(len - N);
        vg.u = Series(len - N);
        for (int t = 0; t + N < len; ++t) {
            vf.u[t] = f[N + t];
            vg.u[t] = g[N + t];
        }
        require(residue(vf) == residue(vg), "residue moved under a tangent gauge");
        OneVarNormalization nv = normalize_onevar(vf);
        OneVarNormalization again = normalize_onevar(nv.normal);
        require(again.lambda == nv.lambda, "normalization is not idempotent in lambda");
        require(again.phi == Series::identity(again.phi.length()),
                "normal form was moved again");
    }
}

// criterion 7
void lambda_vanishing_cusp()
{
    Rng rng(707);
    Setup c = cusp(2, 3, 24);
    for (int i = 0; i < c.st.coker.mu; ++i) {
        int qi = c.st.coker.degrees[static_cast<std::size_t>(i)] - c.ctx.delta0;
        require(qi % c.ctx.delta != 0, "expected non-divisible q_i on the cusp");
        for (int rep = 0; rep < 20; ++rep) {
            NormalForm nf;
            nf.structure = c.st;
            for (int k = 0; k < c.st.coker.mu; ++k) {
                int len = (c.ctx.K - c.st.coker.degrees[static_cast<std::size_t>(k)]) /
                              c.ctx.delta +
                          1;
                Series s(len);
                for (int j = 1; j < len; ++j) s[j] = oracles::random_rational(rng);
                nf.d.push_back(s);
            }
            if (nf.d[static_cast<std::size_t>(i)].order() == kOrderInf) continue;
            FinalReduceResult r = final_reduce(nf, i, c.ctx);
            require(r.nf.finalized->lambda == 0, "lambda must vanish when delta does not "
                                                 "divide q_i");
            require(r.status == ReduceStatus::reduced_lambda_zero, "status mismatch");
        }
    }
}

// criterion 8
void operator_identity()
{
    Rng rng(808);
    Setup c = cusp(2, 3, 20);
    std::vector<Rational> cs;
    for (int i = 0; i < 5; ++i) cs.push_back(oracles::random_rational(rng));
    for (int rep = 0; rep < 50; ++rep) {
        Poly f = oracles::random_poly(rng, c.ctx.w, 0, 20);
        for (const Rational& cc : cs) {
            Poly lhs = c.st.basis.x0.apply(f);
            lhs = lhs.radial(c.ctx.w) + lhs.scaled(cc);
            Poly rhs = f.radial(c.ctx.w) + f.scaled(cc + c.ctx.delta0);
            rhs = c.st.basis.x0.apply(rhs);
            require(lhs == rhs, "operator identity failed");
        }
    }
}

// criterion 9
void kernel_structure()
{
    Setup c = cusp(2, 3, 40);
    for (int m = 0; m <= 36; ++m) {
        std::vector<Poly> ker = kernel_slice(m, c.st, c.ctx);
        if (m % c.ctx.delta == 0) {
            require(ker.size() == 1, "kernel dimension mismatch at degree " + std::to_string(m));
            Poly hk = pow_truncated(c.ctx.h, m / c.ctx.delta, c.ctx.w, m);
            Rational lead;
            for (const Exp& mono : slice_monomials(c.ctx.w, m)) {
                lead = hk.coeff(mono);
                if (lead != 0) break;
            }
            require(ker[0] == hk.scaled(Rational(1) / lead),
                    "kernel is not the power of h at degree " + std::to_string(m));
        } else {
            require(ker.empty(), "unexpected kernel at degree " + std::to_string(m));
        }
    }
}

// criterion 10
void determinism()
{
    std::vector<ProblemFile> problems;
    {
        Setup c = cusp(2, 3, 24);
        VField X = c.st.basis.x0 + multiply(P("x*y + x^4"), c.st.basis.radial) +
                   multiply(P("1/2*x^2"), c.st.basis.x0);
        problems.push_back(problem_for(c, X, Pipeline::foliation));
    }
    {
        QHContext ctx = make_context({1, 1}, P("x*y"), P("x*y"), 20);
        CokerStructure st = analyze_cokernel(ctx, VField{Poly::zero(), P("y")});
        Setup s{ctx, st};
        problems.push_back(problem_for(s, {P("x^2 + x^3"), P("y - 2*x*y")}, Pipeline::field));
    }
    {
        Setup s = poincare_dulac(2, 3, 36);
        VField X = s.st.basis.x0 +
                   multiply(s.ctx.h + pow_truncated(s.ctx.h, 2, s.ctx.w, s.ctx.K).scaled(3),
                            s.st.basis.radial);
        problems.push_back(problem_for(s, X, Pipeline::field));
    }
    int idx = 0;
    for (const ProblemFile& p : problems) {
        require(cmd_normalize(p, "").report == cmd_normalize(p, "").report,
                "reports differ between runs");
        std::string path = "acceptance_det_" + std::to_string(idx) + ".json";
        cmd_normalize(p, path);
        Certificate ca = load_certificate(path);
        cmd_normalize(p, path);
        Certificate cb = load_certificate(path);
        require(certificate_to_json(ca) == certificate_to_json(cb),
                "certificates are not byte-identical");
        ++idx;
    }
}

} // namespace

int main()
{
    criterion(1, "cusp Milnor data and monomial ranges", 1.0, cusp_milnor_data);
    criterion(2, "cokernel slot count vs brute-force rank (m <= 40)", 10.0,
              cokernel_structure_oracle);
    criterion(3, "100 random cusp perturbations: exact fibered round trip", 120.0,
              conjugacy_round_trip);
    criterion(4, "Poincare-Dulac prenormal and final shapes", 0, poincare_dulac_shapes);
    criterion(5, "saddle-node reduces to the Bruno form (K = 20)", 0, saddle_node_bruno);
    criterion(6, "residue: value, invariance, idempotence", 0, residue_properties);
    criterion(7, "lambda vanishes when delta does not divide q_i", 0, lambda_vanishing_cusp);
    criterion(8, "(R+c) X0 = X0 (R+c+delta0) on random polynomials", 0, operator_identity);
    criterion(9, "kernel slices are spanned by powers of h (m <= 36)", 0, kernel_structure);
    criterion(10, "full pipeline is byte-identical across runs", 0, determinism);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
