// qhnf: exact formal normal forms of plane vector fields with a fixed
// quasi-homogeneous separatrix.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qhnf/io.hpp"

namespace {

struct CommonOpts {
    std::string input;
    int truncation = -1;
    std::string pipeline;
    int pick = 0;
    std::string emit_certificate;
    std::string verify_path;
};

void add_common(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--input", o.input, "problem file (JSON)")->required();
    cmd->add_option("--truncation", o.truncation, "override the truncation bound");
    cmd->add_option("--pipeline", o.pipeline, "override the pipeline (foliation|field|cokernel)");
    cmd->add_option("--pick", o.pick, "basis index (1-based) normalized by the final reduction");
}

qhnf::ProblemFile load(const CommonOpts& o)
{
    qhnf::ProblemFile p = qhnf::load_problem(o.input);
    if (o.truncation > 0) p.truncation = o.truncation;
    if (o.pick > 0) p.pick = o.pick;
    if (!o.pipeline.empty()) {
        if (o.pipeline == "foliation")
            p.pipeline = qhnf::Pipeline::foliation;
        else if (o.pipeline == "field")
            p.pipeline = qhnf::Pipeline::field;
        else if (o.pipeline == "cokernel")
            p.pipeline = qhnf::Pipeline::cokernel;
        else
            throw qhnf::parse_error("unknown pipeline '" + o.pipeline + "'");
    }
    return p;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact normal forms for perturbations of quasi-homogeneous plane fields"};
    app.require_subcommand(1);

    CommonOpts cok, norm, ver;
    CLI::App* c_cok = app.add_subcommand("cokernel", "Milnor number and cokernel basis");
    add_common(c_cok, cok);
    CLI::App* c_norm = app.add_subcommand("normalize", "prenormalize and reduce a perturbation");
    add_common(c_norm, norm);
    c_norm->add_option("--emit-certificate", norm.emit_certificate,
                       "write the normal form and conjugation script to this file");
    CLI::App* c_ver = app.add_subcommand("verify", "check a certificate against a problem");
    add_common(c_ver, ver);
    c_ver->add_option("--verify", ver.verify_path, "certificate file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        qhnf::CommandOutcome out;
        if (c_cok->parsed()) {
            out = qhnf::cmd_cokernel(load(cok));
        } else if (c_norm->parsed()) {
            out = qhnf::cmd_normalize(load(norm), norm.emit_certificate);
        } else {
            out = qhnf::cmd_verify(load(ver), qhnf::load_certificate(ver.verify_path));
        }
        std::cout << out.report;
        return out.exit_code;
    } catch (const qhnf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qhnf::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
