#ifndef QHNF_IO_HPP
#define QHNF_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhnf/finalred.hpp"

namespace qhnf {

enum class Pipeline { foliation, field, cokernel };

std::string pipeline_name(Pipeline p);
std::string status_name(ReduceStatus s);

// Brace-delimited key/value problem description (JSON). Polynomials are the
// shared text syntax; pick is 1-based.
struct ProblemFile {
    Weights w;
    std::string h_text;
    std::string h0_text; // empty: defaults to h
    std::string dx_text, dy_text;
    bool has_field = false;
    int truncation = 0;
    Pipeline pipeline = Pipeline::foliation;
    std::optional<int> pick;
};

ProblemFile parse_problem_text(const std::string& json_text, const std::string& origin);
ProblemFile load_problem(const std::string& path);

struct BuiltProblem {
    QHContext ctx;
    VField X;
    CokerStructure st;
};

// Parses the polynomial payload, validates the context, classifies the
// cokernel structure. with_field = false skips the vector field (cokernel
// pipeline).
BuiltProblem build_problem(const ProblemFile& p, bool with_field = true);

// Self-contained record of a normalization run: the problem, the normal
// form, and the conjugation script, re-verifiable without recomputation.
struct Certificate {
    Weights w;
    std::string h_text, h0_text, dx_text, dy_text;
    int truncation = 0;
    Pipeline pipeline = Pipeline::foliation;
    std::string status;

    std::string mode;
    std::vector<std::string> basis_monomials;
    std::string power_text; // empty when the structure has no power object
    std::vector<std::string> d_texts;
    std::string field_part_text; // field pipeline only
    std::string raw_dissipative_text;
    std::optional<FinalizedInfo> finalized;

    std::vector<std::pair<std::string, std::string>> generators;
    std::string unit_text;
};

std::string certificate_to_json(const Certificate& c);
Certificate parse_certificate_text(const std::string& json_text, const std::string& origin);
Certificate load_certificate(const std::string& path);

struct CommandOutcome {
    int exit_code = 0;
    std::string report;
};

CommandOutcome cmd_cokernel(const ProblemFile& p);
CommandOutcome cmd_normalize(const ProblemFile& p, const std::string& emit_path);
CommandOutcome cmd_verify(const ProblemFile& p, const Certificate& cert);

// Maps an Error to the documented exit code (2/3/4, internal -> 1).
int exit_code_for(const Error& e);

} // namespace qhnf

#endif
