// Command-line front end; talks to the library only through the C API.

#include "fqcycles.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitIdentity = 3;

struct Globals {
    std::string format;
    std::string output;
    unsigned threads = 1;
    std::uint64_t max_states = 1u << 22;
    std::uint64_t irreducible_budget = 10000000;
};

fqc_constraint parse_constraint(const std::string& text) {
    // d=<degree>:k=<count>
    unsigned d = 0, k = 0;
    int used = 0;
    if (std::sscanf(text.c_str(), "d=%u:k=%u%n", &d, &k, &used) != 2 ||
        used != static_cast<int>(text.size()) || d == 0)
        throw CLI::ValidationError("--constraint", "expected d=<degree>:k=<count>, got '" + text + "'");
    return {d, k};
}

std::vector<fqc_constraint> parse_constraints(const std::vector<std::string>& texts) {
    std::vector<fqc_constraint> out;
    for (const auto& t : texts)
        out.push_back(parse_constraint(t));
    return out;
}

fqc_method parse_method(const std::string& m) {
    if (m == "cycle-index")
        return FQC_METHOD_FORMULA;
    if (m == "brute")
        return FQC_METHOD_BRUTE;
    return FQC_METHOD_BOTH;
}

int exit_code(fqc_status status) {
    switch (status) {
    case FQC_OK: return kExitOk;
    case FQC_INVALID_ARGUMENT: return kExitUsage;
    case FQC_BUDGET_EXCEEDED: return kExitBudget;
    case FQC_IDENTITY_FAILURE:
    case FQC_INTERNAL_ERROR: return kExitIdentity;
    }
    return kExitIdentity;
}

using ContextPtr = std::unique_ptr<fqc_context, decltype(&fqc_context_destroy)>;
using ReportPtr = std::unique_ptr<fqc_report, decltype(&fqc_report_destroy)>;

ContextPtr make_context(const Globals& g) {
    fqc_context* raw = nullptr;
    if (fqc_context_create(&raw) != FQC_OK)
        throw std::runtime_error("cannot create context");
    ContextPtr ctx(raw, fqc_context_destroy);
    if (fqc_context_set_threads(ctx.get(), g.threads) != FQC_OK ||
        fqc_context_set_max_states(ctx.get(), g.max_states) != FQC_OK ||
        fqc_context_set_irreducible_budget(ctx.get(), g.irreducible_budget) != FQC_OK)
        throw CLI::ValidationError("budgets", fqc_context_last_error(ctx.get()));
    return ctx;
}

// Runs one C API call and writes its report; returns the process exit code.
template <class Call>
int run(const Globals& g, fqc_format default_format, Call&& call) {
    ContextPtr ctx = make_context(g);
    fqc_report* raw = nullptr;
    const fqc_status status = call(ctx.get(), &raw);
    ReportPtr report(raw, fqc_report_destroy);
    if (status != FQC_OK) {
        std::cerr << "error (" << fqc_status_name(status) << "): " << fqc_context_last_error(ctx.get()) << "\n";
        return exit_code(status);
    }
    fqc_format format = default_format;
    if (g.format == "json")
        format = FQC_FORMAT_JSON;
    else if (g.format == "csv")
        format = FQC_FORMAT_CSV;
    const char* text = fqc_report_string(report.get(), format);
    if (!text) {
        std::cerr << "error: this report has no " << g.format << " form\n";
        return kExitUsage;
    }
    std::string body = text;
    if (!body.empty() && body.back() != '\n')
        body += '\n';
    if (g.output.empty()) {
        std::cout << body;
    } else {
        std::ofstream file(g.output);
        if (!file) {
            std::cerr << "error: cannot write " << g.output << "\n";
            return kExitUsage;
        }
        file << body;
    }
    if (fqc_report_passed(report.get()) == 0) {
        std::cerr << "FAIL: an asserted identity did not hold\n";
        return kExitIdentity;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Factorization statistics of characteristic polynomials of random matrices over finite fields"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file overriding defaults");

    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output,-o", g.output, "Write the report here instead of stdout");
    app.add_option("--threads", g.threads, "Worker threads for enumeration and sampling")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-states", g.max_states, "Cap on q^(n^2) or n! enumerated states")
        ->envname("FQCYCLES_MAX_STATES")
        ->check(CLI::PositiveNumber);
    app.add_option("--irreducible-budget", g.irreducible_budget, "Cap on q^d when listing irreducibles")
        ->envname("FQCYCLES_IRREDUCIBLE_BUDGET")
        ->check(CLI::PositiveNumber);

    int code = kExitOk;

    // joint
    unsigned joint_n = 0;
    std::uint64_t joint_q = 0;
    std::vector<std::string> joint_cons;
    std::string joint_method = "cycle-index";
    auto* joint = app.add_subcommand("joint", "Prob that f_A has exactly k irreducible factors of degree d")
                      ->footer("CSV columns: method,exact,float");
    joint->add_option("--n", joint_n, "Matrix size")->required()->check(CLI::PositiveNumber);
    joint->add_option("--q", joint_q, "Field order (prime power)")->required();
    joint->add_option("--constraint", joint_cons, "d=<degree>:k=<count>, repeatable");
    joint->add_option("--method", joint_method, "Computation method")
        ->check(CLI::IsMember({"cycle-index", "brute", "both"}));
    joint->callback([&] {
        const auto cs = parse_constraints(joint_cons);
        code = run(g, FQC_FORMAT_JSON, [&](fqc_context* c, fqc_report** r) {
            return fqc_joint(c, joint_n, joint_q, cs.data(), cs.size(), parse_method(joint_method), r);
        });
    });

    // perm
    unsigned perm_n = 0;
    std::vector<std::string> perm_cons;
    std::string perm_method = "cycle-index";
    auto* perm = app.add_subcommand("perm", "Prob that a permutation of n letters has exactly k d-cycles")
                     ->footer("CSV columns: method,exact,float");
    perm->add_option("--n", perm_n, "Number of letters")->required();
    perm->add_option("--constraint", perm_cons, "d=<length>:k=<count>, repeatable");
    perm->add_option("--method", perm_method, "Computation method")
        ->check(CLI::IsMember({"cycle-index", "brute", "both"}));
    perm->callback([&] {
        const auto cs = parse_constraints(perm_cons);
        code = run(g, FQC_FORMAT_JSON, [&](fqc_context* c, fqc_report** r) {
            return fqc_perm(c, perm_n, cs.data(), cs.size(), parse_method(perm_method), r);
        });
    });

    // limit-q
    unsigned limit_n = 0;
    std::vector<std::string> limit_cons;
    std::vector<std::uint64_t> limit_qs{2, 3, 4, 5, 7, 8, 9};
    auto* limit = app.add_subcommand("limit-q", "Matrix probabilities as q grows, against the permutation value")
                      ->footer("CSV columns: q,exact,float,gap");
    limit->add_option("--n", limit_n, "Matrix size")->required()->check(CLI::PositiveNumber);
    limit->add_option("--constraint", limit_cons, "d=<degree>:k=<count>, repeatable");
    limit->add_option("--qs", limit_qs, "Strictly increasing prime powers")->delimiter(',');
    limit->callback([&] {
        const auto cs = parse_constraints(limit_cons);
        code = run(g, FQC_FORMAT_JSON, [&](fqc_context* c, fqc_report** r) {
            return fqc_limit_q(c, limit_n, cs.data(), cs.size(), limit_qs.data(), limit_qs.size(), r);
        });
    });

    // shepp-lloyd
    std::vector<unsigned> sl_zero;
    std::vector<std::string> sl_hits;
    unsigned sl_order = 12;
    auto* sl = app.add_subcommand("shepp-lloyd", "Coefficients of the closed-form cycle generating function")
                   ->footer("CSV columns: n,exact,float");
    sl->add_option("--zero", sl_zero, "Cycle lengths forced to be absent")->delimiter(',');
    sl->add_option("--hit", sl_hits, "d=<length>:k=<count> with k >= 1: either 0 or exactly k d-cycles");
    sl->add_option("--order", sl_order, "Truncation order");
    sl->callback([&] {
        const auto hits = parse_constraints(sl_hits);
        code = run(g, FQC_FORMAT_JSON, [&](fqc_context* c, fqc_report** r) {
            return fqc_shepp_lloyd(c, sl_zero.data(), sl_zero.size(), hits.data(), hits.size(), sl_order, r);
        });
    });

    // jordan-landau
    unsigned jl_k = 2;
    std::vector<std::uint64_t> jl_ns;
    auto* jl = app.add_subcommand("jordan-landau", "Normalized probability of exactly k cycles")
                   ->footer("CSV columns: n,k,p,ratio");
    jl->add_option("--k", jl_k, "Number of cycles")->check(CLI::PositiveNumber);
    jl->add_option("--n", jl_ns, "Permutation sizes")->required()->delimiter(',');
    jl->callback([&] {
        code = run(g, FQC_FORMAT_JSON, [&](fqc_context* c, fqc_report** r) {
            return fqc_jordan_landau(c, jl_k, jl_ns.data(), jl_ns.size(), r);
        });
    });

    // cokernel
    fqc_sampler ck{2, 1, 1, 100000, 0};
    std::vector<unsigned> ck_degrees;
    auto* ck_cmd = app.add_subcommand("cokernel", "Monte Carlo frequency of coker(P(A)) = 0 over Z/p^K")
                       ->footer("CSV columns: p,n,K,samples,empirical,ci99,exact,exact_float,within_3sigma,"
                                "saturated_fraction");
    ck_cmd->add_option("--p", ck.p, "Prime")->required();
    ck_cmd->add_option("--n", ck.n, "Matrix size")->required()->check(CLI::PositiveNumber);
    ck_cmd->add_option("--degrees", ck_degrees, "Degrees of the irreducibles P")->required()->delimiter(',');
    ck_cmd->add_option("--samples", ck.samples, "Number of sampled matrices");
    ck_cmd->add_option("--precision", ck.precision, "K, working modulus p^K");
    ck_cmd->add_option("--seed", ck.seed, "Sampler seed");
    ck_cmd->callback([&] {
        code = run(g, FQC_FORMAT_JSON, [&](fqc_context* c, fqc_report** r) {
            return fqc_cokernel(c, &ck, ck_degrees.data(), ck_degrees.size(), r);
        });
    });

    // conjecture
    fqc_sampler cj{2, 1, 2, 100000, 0};
    std::vector<std::string> cj_cons;
    auto* cj_cmd = app.add_subcommand("conjecture", "Monte Carlo frequency of |coker(P_j(A))| = p^(d_j k_j)")
                       ->footer("CSV columns: tuple,hits,empirical (last row: simultaneous event)");
    cj_cmd->add_option("--p", cj.p, "Prime")->required();
    cj_cmd->add_option("--n", cj.n, "Matrix size")->required()->check(CLI::PositiveNumber);
    cj_cmd->add_option("--constraint", cj_cons, "d=<degree>:k=<count>, repeatable")->required();
    cj_cmd->add_option("--samples", cj.samples, "Number of sampled matrices");
    cj_cmd->add_option("--precision", cj.precision, "K, must exceed every d*k");
    cj_cmd->add_option("--seed", cj.seed, "Sampler seed");
    cj_cmd->callback([&] {
        const auto cs = parse_constraints(cj_cons);
        code = run(g, FQC_FORMAT_JSON, [&](fqc_context* c, fqc_report** r) {
            return fqc_conjecture(c, &cj, cs.data(), cs.size(), r);
        });
    });

    // padic-table
    std::vector<unsigned> pt_degrees, pt_ns;
    std::vector<std::uint32_t> pt_ps;
    auto* pt = app.add_subcommand("padic-table", "Exact coker-zero probabilities over an (n, p) grid")
                   ->footer("CSV columns: n,p,exact,float,sym_target,gap");
    pt->add_option("--degrees", pt_degrees, "Degrees of the irreducibles P")->required()->delimiter(',');
    pt->add_option("--n", pt_ns, "Matrix sizes")->required()->delimiter(',');
    pt->add_option("--p", pt_ps, "Primes")->required()->delimiter(',');
    pt->callback([&] {
        code = run(g, FQC_FORMAT_JSON, [&](fqc_context* c, fqc_report** r) {
            return fqc_padic_table(c, pt_degrees.data(), pt_degrees.size(), pt_ns.data(), pt_ns.size(),
                                   pt_ps.data(), pt_ps.size(), r);
        });
    });

    // verify
    std::vector<std::string> vf_only;
    std::vector<std::uint64_t> vf_qs;
    unsigned vf_nmax = 0;
    std::uint64_t vf_samples = 0, vf_seed = 42;
    std::string vf_fault;
    auto* vf = app.add_subcommand("verify", "Run the identity suite; one PASS/FAIL line per check")
                   ->footer("Checks: key, mac, fine-herstein, sf, sf-nonzero-constant, fac1, issue, red\n"
                            "CSV columns: id,passed,detail");
    vf->add_option("--only", vf_only, "Run only these checks")->delimiter(',');
    vf->add_option("--qs", vf_qs, "Field orders for the key check")->delimiter(',');
    vf->add_option("--nmax", vf_nmax, "Top coefficient for key and fac1");
    vf->add_option("--samples", vf_samples, "Samples per case in the red check");
    vf->add_option("--seed", vf_seed, "Sampler seed for the red check");
    vf->add_option("--inject-fault", vf_fault, "Perturb one closed form by one (suite self-test)")
        ->check(CLI::IsMember({"mac", "nilpotent", "squarefree"}));
    vf->callback([&] {
        std::vector<const char*> only;
        for (const auto& s : vf_only)
            only.push_back(s.c_str());
        const fqc_verify_options opt{only.data(), only.size(), vf_qs.data(), vf_qs.size(), vf_nmax,
                                     vf_samples, vf_seed, vf_fault.empty() ? nullptr : vf_fault.c_str()};
        code = run(g, FQC_FORMAT_TEXT, [&](fqc_context* c, fqc_report** r) { return fqc_verify(c, &opt, r); });
    });

    // irreducibles
    std::uint64_t ir_q = 2;
    unsigned ir_d = 1;
    auto* ir = app.add_subcommand("irreducibles", "List monic irreducible polynomials of degree d over F_q")
                   ->footer("CSV columns: coefficients (constant term first)");
    ir->add_option("--q", ir_q, "Field order")->required();
    ir->add_option("--d", ir_d, "Degree")->required()->check(CLI::PositiveNumber);
    ir->callback([&] {
        code = run(g, FQC_FORMAT_JSON,
                   [&](fqc_context* c, fqc_report** r) { return fqc_irreducibles(c, ir_q, ir_d, r); });
    });

    // factor
    std::uint64_t fa_q = 2;
    std::vector<std::uint32_t> fa_coeffs;
    auto* fa = app.add_subcommand("factor", "Degree profile of a monic polynomial over F_q")
                   ->footer("CSV columns: degree,count");
    fa->add_option("--q", fa_q, "Field order")->required();
    fa->add_option("--coeffs", fa_coeffs, "Coefficients, constant term first")->required()->delimiter(',');
    fa->callback([&] {
        code = run(g, FQC_FORMAT_JSON, [&](fqc_context* c, fqc_report** r) {
            return fqc_factor_profile(c, fa_q, fa_coeffs.data(), fa_coeffs.size(), r);
        });
    });

    // charpoly
    std::uint64_t cp_q = 2;
    unsigned cp_n = 1;
    std::vector<std::uint32_t> cp_entries;
    auto* cp = app.add_subcommand("charpoly", "Characteristic polynomial of a matrix over F_q")
                   ->footer("CSV columns: power,coefficient");
    cp->add_option("--q", cp_q, "Field order")->required();
    cp->add_option("--n", cp_n, "Matrix size")->required()->check(CLI::PositiveNumber);
    cp->add_option("--entries", cp_entries, "Row-major entries")->required()->delimiter(',');
    cp->callback([&] {
        if (cp_entries.size() != std::size_t{cp_n} * cp_n)
            throw CLI::ValidationError("--entries", "expected n*n entries");
        code = run(g, FQC_FORMAT_JSON,
                   [&](fqc_context* c, fqc_report** r) { return fqc_char_poly(c, cp_q, cp_n, cp_entries.data(), r); });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIdentity;
    }
    return code;
}
