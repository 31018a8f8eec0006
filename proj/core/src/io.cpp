#include "qhnf/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qhnf {

using ordered_json = nlohmann::ordered_json;

std::string pipeline_name(Pipeline p)
{
    switch (p) {
    case Pipeline::foliation: return "foliation";
    case Pipeline::field: return "field";
    case Pipeline::cokernel: return "cokernel";
    }
    return "?";
}

std::string status_name(ReduceStatus s)
{
    switch (s) {
    case ReduceStatus::reduced_lambda_nonzero: return "reduced-lambda-nonzero";
    case ReduceStatus::reduced_lambda_zero: return "reduced-lambda-zero";
    case ReduceStatus::integrable: return "integrable-up-to-truncation";
    case ReduceStatus::prenormal_only: return "prenormal-generic";
    }
    return "?";
}

namespace {

Pipeline pipeline_from_name(const std::string& s, const std::string& origin)
{
    if (s == "foliation") return Pipeline::foliation;
    if (s == "field") return Pipeline::field;
    if (s == "cokernel") return Pipeline::cokernel;
    throw parse_error(origin + ": unknown pipeline '" + s + "'");
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte)
{
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

ordered_json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw parse_error(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": " + e.what());
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

ProblemFile parse_problem_text(const std::string& text, const std::string& origin)
{
    ordered_json j = parse_json(text, origin);
    ProblemFile p;
    if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].size() != 2)
        throw parse_error(origin + ": 'weights' must be an array [p1, p2]");
    p.w.p1 = j["weights"][0].get<int>();
    p.w.p2 = j["weights"][1].get<int>();
    if (!j.contains("h") || !j["h"].is_string())
        throw parse_error(origin + ": missing string field 'h'");
    p.h_text = j["h"].get<std::string>();
    p.h0_text = j.value("h0", std::string());
    if (j.contains("field")) {
        const auto& f = j["field"];
        if (!f.is_object() || !f.contains("dx") || !f.contains("dy"))
            throw parse_error(origin + ": 'field' must be an object with 'dx' and 'dy'");
        p.dx_text = f["dx"].get<std::string>();
        p.dy_text = f["dy"].get<std::string>();
        p.has_field = true;
    }
    if (!j.contains("truncation") || !j["truncation"].is_number_integer())
        throw parse_error(origin + ": missing integer field 'truncation'");
    p.truncation = j["truncation"].get<int>();
    p.pipeline = pipeline_from_name(j.value("pipeline", std::string("foliation")), origin);
    if (j.contains("pick")) p.pick = j["pick"].get<int>();
    return p;
}

ProblemFile load_problem(const std::string& path)
{
    return parse_problem_text(read_file(path), path);
}

BuiltProblem build_problem(const ProblemFile& p, bool with_field)
{
    BuiltProblem bp;
    Poly h, h0;
    try {
        h = parse_poly(p.h_text);
    } catch (const Error& e) {
        throw parse_error(std::string("field 'h': ") + e.what());
    }
    if (p.h0_text.empty()) {
        h0 = h;
    } else {
        try {
            h0 = parse_poly(p.h0_text);
        } catch (const Error& e) {
            throw parse_error(std::string("field 'h0': ") + e.what());
        }
    }
    bp.ctx = make_context(p.w, h, h0, p.truncation);
    if (!with_field) {
        bp.st = analyze_cokernel(bp.ctx, hamiltonian_x0(bp.ctx));
        return bp;
    }
    if (!p.has_field)
        throw precondition_error("this pipeline needs a 'field' entry in the problem file");
    Poly dxp, dyp;
    try {
        dxp = parse_poly(p.dx_text);
        dyp = parse_poly(p.dy_text);
    } catch (const Error& e) {
        throw parse_error(std::string("field entry: ") + e.what());
    }
    bp.X = {dxp, dyp};
    if (bp.X.is_zero()) throw precondition_error("input vector field is zero");
    VField x0 = field_component(bp.X, bp.ctx.w, field_order(bp.X, bp.ctx.w));
    bp.st = analyze_cokernel(bp.ctx, x0);
    return bp;
}

namespace {

std::string series_text(const Series& s) { return s.to_string("h"); }

std::string exps_csv(const std::vector<Exp>& ms)
{
    std::string out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i) out += ",";
        out += monomial_to_string(ms[i]);
    }
    return out;
}

Certificate make_certificate(const ProblemFile& p, const BuiltProblem& bp,
                             const NormalForm& nf, const ConjugationScript& script,
                             ReduceStatus status)
{
    Certificate c;
    c.w = p.w;
    c.h_text = bp.ctx.h.to_string(bp.ctx.w);
    c.h0_text = bp.ctx.h0.to_string(bp.ctx.w);
    c.dx_text = bp.X.P.to_string(bp.ctx.w);
    c.dy_text = bp.X.Q.to_string(bp.ctx.w);
    c.truncation = bp.ctx.K;
    c.pipeline = p.pipeline;
    c.status = status_name(status);

    const CokerStructure& st = nf.structure;
    c.mode = (st.mode == BasisMode::structured)  ? "structured"
             : (st.mode == BasisMode::diagonal) ? "diagonal"
                                                : "generic";
    for (const Exp& m : st.coker.monomials) c.basis_monomials.push_back(monomial_to_string(m));
    if (st.has_power) c.power_text = st.power.to_string(bp.ctx.w);
    for (const Series& s : nf.d) c.d_texts.push_back(series_text(s));
    if (nf.has_field_part) c.field_part_text = series_text(nf.field_part);
    if (st.mode == BasisMode::generic)
        c.raw_dissipative_text = nf.raw_dissipative.to_string(bp.ctx.w);
    c.finalized = nf.finalized;

    for (const VField& g : script.generators)
        c.generators.push_back({g.P.to_string(bp.ctx.w), g.Q.to_string(bp.ctx.w)});
    c.unit_text = script.unit.to_string(bp.ctx.w);
    return c;
}

std::string finalized_line(const FinalizedInfo& f)
{
    std::string s = "pick=" + std::to_string(f.index + 1) + "; m=" + std::to_string(f.m) +
                    "; n=" + std::to_string(f.n) + "; lambda=" + rational_to_string(f.lambda) +
                    "; lead=" + rational_to_string(f.lead) +
                    "; stabilizer=" + std::to_string(f.stabilizer);
    if (!f.lambda_in_window) s += "; lambda-beyond-truncation";
    return s;
}

} // namespace

std::string certificate_to_json(const Certificate& c)
{
    ordered_json j;
    j["format"] = "qhnf-certificate/1";
    j["problem"] = ordered_json{{"weights", {c.w.p1, c.w.p2}},
                                {"h", c.h_text},
                                {"h0", c.h0_text},
                                {"field", {{"dx", c.dx_text}, {"dy", c.dy_text}}},
                                {"truncation", c.truncation},
                                {"pipeline", pipeline_name(c.pipeline)}};
    j["status"] = c.status;
    ordered_json nf;
    nf["mode"] = c.mode;
    nf["basis"] = c.basis_monomials;
    nf["power"] = c.power_text;
    nf["d"] = c.d_texts;
    if (!c.field_part_text.empty()) nf["field_part"] = c.field_part_text;
    if (!c.raw_dissipative_text.empty()) nf["dissipative"] = c.raw_dissipative_text;
    if (c.finalized) {
        nf["finalized"] = ordered_json{{"index", c.finalized->index + 1},
                                       {"m", c.finalized->m},
                                       {"n", c.finalized->n},
                                       {"lambda", rational_to_string(c.finalized->lambda)},
                                       {"lead", rational_to_string(c.finalized->lead)},
                                       {"lambda_in_window", c.finalized->lambda_in_window},
                                       {"stabilizer", c.finalized->stabilizer}};
    }
    j["normal_form"] = nf;
    ordered_json gens = ordered_json::array();
    for (const auto& [dx, dy] : c.generators) gens.push_back(ordered_json{{"dx", dx}, {"dy", dy}});
    j["script"] = gens;
    j["unit"] = c.unit_text;
    return j.dump(2) + "\n";
}

Certificate parse_certificate_text(const std::string& text, const std::string& origin)
{
    ordered_json j = parse_json(text, origin);
    Certificate c;
    if (j.value("format", std::string()) != "qhnf-certificate/1")
        throw parse_error(origin + ": not a qhnf certificate (missing format tag)");
    const auto& pj = j.at("problem");
    c.w.p1 = pj.at("weights")[0].get<int>();
    c.w.p2 = pj.at("weights")[1].get<int>();
    c.h_text = pj.at("h").get<std::string>();
    c.h0_text = pj.at("h0").get<std::string>();
    c.dx_text = pj.at("field").at("dx").get<std::string>();
    c.dy_text = pj.at("field").at("dy").get<std::string>();
    c.truncation = pj.at("truncation").get<int>();
    c.pipeline = pipeline_from_name(pj.at("pipeline").get<std::string>(), origin);
    c.status = j.value("status", std::string());
    const auto& nj = j.at("normal_form");
    c.mode = nj.at("mode").get<std::string>();
    for (const auto& b : nj.at("basis")) c.basis_monomials.push_back(b.get<std::string>());
    c.power_text = nj.value("power", std::string());
    for (const auto& d : nj.at("d")) c.d_texts.push_back(d.get<std::string>());
    c.field_part_text = nj.value("field_part", std::string());
    c.raw_dissipative_text = nj.value("dissipative", std::string());
    if (nj.contains("finalized")) {
        FinalizedInfo f;
        const auto& fj = nj["finalized"];
        f.index = fj.at("index").get<int>() - 1;
        f.m = fj.at("m").get<int>();
        f.n = fj.at("n").get<int>();
        f.lambda = parse_rational(fj.at("lambda").get<std::string>());
        f.lead = parse_rational(fj.at("lead").get<std::string>());
        f.lambda_in_window = fj.value("lambda_in_window", true);
        f.stabilizer = fj.value("stabilizer", 0);
        c.finalized = f;
    }
    for (const auto& g : j.at("script"))
        c.generators.push_back({g.at("dx").get<std::string>(), g.at("dy").get<std::string>()});
    c.unit_text = j.at("unit").get<std::string>();
    return c;
}

Certificate load_certificate(const std::string& path)
{
    return parse_certificate_text(read_file(path), path);
}

CommandOutcome cmd_cokernel(const ProblemFile& p)
{
    BuiltProblem bp = build_problem(p, false);
    // milnor_basis raises the explicit non-isolated diagnostic
    CokerBasis basis = milnor_basis(bp.ctx);
    std::ostringstream os;
    os << "mu=" << basis.mu << "; basis=" << exps_csv(basis.monomials) << "\n";
    os << "r=";
    for (std::size_t i = 0; i < basis.degrees.size(); ++i) {
        if (i) os << ",";
        os << rational_to_string(Rational(basis.degrees[i]) / bp.ctx.delta);
    }
    os << "\n";
    os << "isolated=" << (is_isolated(bp.ctx) ? "true" : "false") << "\n";
    return {0, os.str()};
}

namespace {

// Recomputed unit: the integrable coefficient of the full pullback.
Poly recompute_unit(const VField& X, const ConjugationScript& script,
                    const CokerStructure& st, const QHContext& ctx)
{
    VField cur = field_truncate(X, ctx.w, ctx.K);
    for (const VField& Z : script.generators) cur = exp_conjugate(Z, cur, ctx.w, ctx.K);
    return to_log_basis(cur, st.basis, ctx).a;
}

} // namespace

CommandOutcome cmd_normalize(const ProblemFile& p, const std::string& emit_path)
{
    if (p.pipeline == Pipeline::cokernel)
        throw precondition_error("pipeline 'cokernel' is served by the cokernel command");
    BuiltProblem bp = build_problem(p);
    std::optional<int> pick;
    if (p.pick) {
        if (*p.pick < 1) throw precondition_error("pick index must be >= 1");
        pick = *p.pick - 1;
    }

    PrenormResult pre;
    FinalReduceResult fin;
    if (p.pipeline == Pipeline::foliation) {
        pre = prenormalize_foliation(bp.X, bp.st, bp.ctx);
        fin = final_reduce(pre.nf, pick, bp.ctx);
    } else {
        pre = prenormalize_field(bp.X, bp.st, bp.ctx);
        fin = field_final_reduce(pre.nf, bp.ctx);
    }
    ConjugationScript script = pre.script;
    for (const VField& g : fin.gauges) {
        script.generators.push_back(g);
        LogField lf = to_log_basis(g, bp.st.basis, bp.ctx);
        if (!lf.a.is_zero()) script.fibered = false;
    }
    if (p.pipeline == Pipeline::foliation && !fin.gauges.empty())
        script.unit = recompute_unit(bp.X, script, bp.st, bp.ctx);

    VerifyReport rep = verify_conjugacy(bp.X, script, fin.nf, bp.ctx, bp.ctx.K);
    if (!rep.ok) throw internal_error("self-check failed: " + rep.describe());

    Certificate cert = make_certificate(p, bp, fin.nf, script, fin.status);
    std::ostringstream os;
    os << "status=" << status_name(fin.status) << "\n";
    os << "pipeline=" << pipeline_name(p.pipeline) << "\n";
    os << "mode=" << cert.mode << "\n";
    os << "mu=" << bp.st.coker.mu << "; basis=" << exps_csv(bp.st.coker.monomials) << "\n";
    if (fin.nf.finalized) os << finalized_line(*fin.nf.finalized) << "\n";
    for (std::size_t i = 0; i < fin.nf.d.size(); ++i)
        os << "d_" << (i + 1) << "=" << fin.nf.d[i].to_string("h") << "\n";
    if (fin.nf.has_field_part)
        os << "a=" << (Series::one(fin.nf.field_part.length()) + fin.nf.field_part).to_string("h")
           << "\n";
    if (bp.st.mode == BasisMode::generic)
        os << "dissipative=" << fin.nf.raw_dissipative.to_string(bp.ctx.w) << "\n";
    os << "unit=" << script.unit.to_string(bp.ctx.w) << "\n";
    os << "generators=" << script.generators.size() << "\n";
    if (!emit_path.empty()) {
        std::ofstream out(emit_path, std::ios::binary);
        if (!out) throw precondition_error("cannot write certificate to '" + emit_path + "'");
        out << certificate_to_json(cert);
        os << "certificate=" << emit_path << "\n";
    }
    return {0, os.str()};
}

CommandOutcome cmd_verify(const ProblemFile& p, const Certificate& cert)
{
    BuiltProblem bp = build_problem(p);
    std::ostringstream os;
    int Keff = std::min(bp.ctx.K, cert.truncation);
    if (cert.truncation < bp.ctx.K)
        os << "warning: certificate truncation " << cert.truncation
           << " below problem truncation " << bp.ctx.K << "; verifying at " << Keff << "\n";
    QHContext ctx = bp.ctx;
    ctx.K = Keff;

    // rebuild the normal form from the certificate alone
    NormalForm nf;
    nf.structure.basis = bp.st.basis;
    if (cert.mode == "structured")
        nf.structure.mode = BasisMode::structured;
    else if (cert.mode == "diagonal")
        nf.structure.mode = BasisMode::diagonal;
    else
        nf.structure.mode = BasisMode::generic;
    nf.structure.coker.mu = static_cast<int>(cert.basis_monomials.size());
    for (const auto& ms : cert.basis_monomials) {
        Poly mp = parse_poly(ms);
        if (mp.term_count() != 1)
            throw parse_error("certificate basis entry '" + ms + "' is not a monomial");
        Exp e = mp.terms().front().first;
        nf.structure.coker.monomials.push_back(e);
        nf.structure.coker.degrees.push_back(pdeg(e, ctx.w));
    }
    if (!cert.power_text.empty()) {
        nf.structure.power = parse_poly(cert.power_text);
        auto pd = nf.structure.power.qh_degree(ctx.w);
        if (!pd) throw parse_error("certificate power object is not quasi-homogeneous");
        nf.structure.power_deg = *pd;
        nf.structure.has_power = true;
    }
    if (nf.structure.mode == BasisMode::diagonal) {
        nf.structure.diag_x = nf.structure.basis.x0.P.coeff({1, 0});
        nf.structure.diag_y = nf.structure.basis.x0.Q.coeff({0, 1});
    }
    for (std::size_t i = 0; i < cert.d_texts.size(); ++i) {
        int len = 1;
        if (nf.structure.has_power)
            len = std::max(1, (Keff - nf.structure.coker.degrees[i]) / nf.structure.power_deg + 1);
        nf.d.push_back(parse_series(cert.d_texts[i], len));
    }
    if (!cert.field_part_text.empty()) {
        nf.has_field_part = true;
        int len = nf.structure.has_power ? Keff / nf.structure.power_deg + 1 : 1;
        nf.field_part = parse_series(cert.field_part_text, len);
    }
    if (!cert.raw_dissipative_text.empty())
        nf.raw_dissipative = parse_poly(cert.raw_dissipative_text).truncated(ctx.w, Keff);
    nf.finalized = cert.finalized;

    ConjugationScript script;
    for (const auto& [dxs, dys] : cert.generators)
        script.generators.push_back({parse_poly(dxs), parse_poly(dys)});
    script.unit = parse_poly(cert.unit_text).truncated(ctx.w, Keff);

    VerifyReport rep = verify_conjugacy(bp.X, script, nf, ctx, Keff);
    if (!rep.ok) {
        os << "verification failed: " << rep.describe() << "\n";
        return {3, os.str()};
    }
    os << "verified: truncation=" << Keff << "\n";
    return {0, os.str()};
}

int exit_code_for(const Error& e)
{
    switch (e.kind) {
    case Error::Kind::parse: return 4;
    case Error::Kind::precondition: return 2;
    case Error::Kind::verification: return 3;
    case Error::Kind::internal: return 1;
    }
    return 1;
}

} // namespace qhnf
