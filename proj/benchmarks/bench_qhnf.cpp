#include <benchmark/benchmark.h>

#include "qhnf/finalred.hpp"
#include "qhnf/io.hpp"

using namespace qhnf;

namespace {

QHContext cusp_ctx(int K)
{
    Poly h = parse_poly("y^2 - x^3");
    return make_context({2, 3}, h, h, K);
}

VField cusp_perturbation(const QHContext& ctx, const CokerStructure& st)
{
    Poly b = parse_poly("1/2*x*y + x^4 - 2/3*x^2*y^2");
    return st.basis.x0 + multiply(b.truncated(ctx.w, ctx.K), st.basis.radial);
}

void BM_MilnorBasis(benchmark::State& state)
{
    Poly h = parse_poly("y^3 - x^5");
    QHContext ctx = make_context({3, 5}, h, h, 30);
    for (auto _ : state) benchmark::DoNotOptimize(milnor_basis(ctx));
}
BENCHMARK(BM_MilnorBasis);

void BM_SolveHomological(benchmark::State& state)
{
    QHContext ctx = cusp_ctx(30);
    CokerStructure st = analyze_cokernel(ctx, hamiltonian_x0(ctx));
    Poly beta = parse_poly("x*y + 3*x^4*y^3 - 1/7*x^9 + y^8");
    for (auto _ : state) benchmark::DoNotOptimize(solve_x0(beta, st, ctx));
}
BENCHMARK(BM_SolveHomological);

void BM_ExpConjugate(benchmark::State& state)
{
    QHContext ctx = cusp_ctx(24);
    CokerStructure st = analyze_cokernel(ctx, hamiltonian_x0(ctx));
    VField Z = multiply(parse_poly("x*y"), st.basis.radial);
    VField X = cusp_perturbation(ctx, st);
    for (auto _ : state) benchmark::DoNotOptimize(exp_conjugate(Z, X, ctx.w, ctx.K));
}
BENCHMARK(BM_ExpConjugate);

void BM_PrenormalizeFoliation(benchmark::State& state)
{
    QHContext ctx = cusp_ctx(24);
    CokerStructure st = analyze_cokernel(ctx, hamiltonian_x0(ctx));
    VField X = cusp_perturbation(ctx, st);
    for (auto _ : state) benchmark::DoNotOptimize(prenormalize_foliation(X, st, ctx));
}
BENCHMARK(BM_PrenormalizeFoliation);

void BM_FullNormalizePipeline(benchmark::State& state)
{
    ProblemFile p;
    p.w = {2, 3};
    p.h_text = "y^2 - x^3";
    p.dx_text = "1/3*y + 1/3*x*y + x^2*y";
    p.dy_text = "1/2*x^2 + 1/2*x^3 + 3/2*x*y^2";
    p.has_field = true;
    p.truncation = 24;
    p.pipeline = Pipeline::foliation;
    for (auto _ : state) benchmark::DoNotOptimize(cmd_normalize(p, ""));
}
BENCHMARK(BM_FullNormalizePipeline);

} // namespace

BENCHMARK_MAIN();
