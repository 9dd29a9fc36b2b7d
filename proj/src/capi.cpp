#include "fqcycles.h"

#include "fqcycles/cycleindex.hpp"
#include "fqcycles/fq.hpp"
#include "fqcycles/oracle.hpp"
#include "fqcycles/padic.hpp"
#include "fqcycles/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <new>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

struct fqc_context {
    fqc::EnumerationBudget budget;
    std::uint64_t irreducible_budget = fqc::kDefaultIrreducibleBudget;
    unsigned threads = 1;
    std::string error;
};

struct fqc_report {
    std::string json;
    std::string csv;
    std::string text;
    int passed = -1;
};

namespace {

template <class T>
std::vector<T> copy_array(const T* data, std::size_t count, const char* what) {
    if (count && !data)
        throw fqc::InvalidArgument(std::string(what) + " is null");
    return count ? std::vector<T>(data, data + count) : std::vector<T>{};
}

std::vector<fqc::Constraint> to_constraints(const fqc_constraint* data, std::size_t count) {
    std::vector<fqc::Constraint> out;
    for (const auto& c : copy_array(data, count, "constraints"))
        out.push_back({c.degree, c.count});
    fqc::validate_constraints(out);
    return out;
}

json constraints_json(const std::vector<fqc::Constraint>& cs) {
    json out = json::array();
    for (const auto& c : cs)
        out.push_back({{"d", c.degree}, {"k", c.count}});
    return out;
}

json exact_json(const fqc::BigRational& x) {
    return {{"exact", fqc::fraction_string(x)}, {"float", x.get_d()}};
}

std::string csv_line(const std::string& label, const fqc::BigRational& x) {
    std::ostringstream out;
    out.precision(17);
    out << label << "," << fqc::fraction_string(x) << "," << x.get_d() << "\n";
    return out.str();
}

fqc_report comparison_report(json head, const char* formula_key, const char* brute_key,
                             const std::optional<fqc::BigRational>& formula,
                             const std::optional<fqc::BigRational>& brute) {
    fqc_report r;
    r.csv = "method,exact,float\n";
    head[formula_key] = formula ? exact_json(*formula) : json(nullptr);
    head[brute_key] = brute ? exact_json(*brute) : json(nullptr);
    if (formula)
        r.csv += csv_line(formula_key, *formula);
    if (brute)
        r.csv += csv_line(brute_key, *brute);
    if (formula && brute) {
        r.passed = *formula == *brute;
        head["agree"] = *formula == *brute;
    } else {
        head["agree"] = nullptr;
    }
    r.json = head.dump();
    r.text = r.json;
    return r;
}

const char* method_name(fqc_method m) {
    switch (m) {
    case FQC_METHOD_FORMULA: return "cycle-index";
    case FQC_METHOD_BRUTE: return "brute";
    case FQC_METHOD_BOTH: return "both";
    }
    throw fqc::InvalidArgument("unknown method");
}

template <class Fn>
fqc_status guarded(fqc_context* ctx, fqc_report** out, Fn&& fn) {
    if (!ctx)
        return FQC_INVALID_ARGUMENT;
    if (!out) {
        ctx->error = "output pointer is null";
        return FQC_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        *out = new fqc_report(fn());
        ctx->error.clear();
        return FQC_OK;
    } catch (const fqc::BudgetExceeded& e) {
        ctx->error = e.what();
        return FQC_BUDGET_EXCEEDED;
    } catch (const fqc::IdentityFailure& e) {
        ctx->error = e.what();
        return FQC_IDENTITY_FAILURE;
    } catch (const fqc::InvalidArgument& e) {
        ctx->error = e.what();
        return FQC_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        ctx->error = "out of memory";
        return FQC_INTERNAL_ERROR;
    } catch (const std::exception& e) {
        ctx->error = e.what();
        return FQC_INTERNAL_ERROR;
    }
}

fqc::SamplerConfig sampler_config(const fqc_context* ctx, const fqc_sampler* s) {
    if (!s)
        throw fqc::InvalidArgument("sampler is null");
    fqc::SamplerConfig cfg;
    cfg.p = s->p;
    cfg.n = s->n;
    cfg.precision = s->precision;
    cfg.samples = s->samples;
    cfg.seed = s->seed;
    cfg.threads = ctx->threads;
    cfg.irreducible_budget = ctx->irreducible_budget;
    return cfg;
}

json poly_json(const fqc::MonicPoly& f) {
    return f.coeffs();
}

} // namespace

extern "C" {

const char* fqc_version(void) {
    return "1.0.0";
}

const char* fqc_status_name(fqc_status status) {
    switch (status) {
    case FQC_OK: return "ok";
    case FQC_INVALID_ARGUMENT: return "invalid argument";
    case FQC_BUDGET_EXCEEDED: return "budget exceeded";
    case FQC_IDENTITY_FAILURE: return "identity failure";
    case FQC_INTERNAL_ERROR: return "internal error";
    }
    return "unknown status";
}

fqc_status fqc_context_create(fqc_context** out) {
    if (!out)
        return FQC_INVALID_ARGUMENT;
    *out = new (std::nothrow) fqc_context();
    return *out ? FQC_OK : FQC_INTERNAL_ERROR;
}

void fqc_context_destroy(fqc_context* ctx) {
    delete ctx;
}

fqc_status fqc_context_set_max_states(fqc_context* ctx, uint64_t max_states) {
    if (!ctx)
        return FQC_INVALID_ARGUMENT;
    if (max_states == 0) {
        ctx->error = "max_states must be positive";
        return FQC_INVALID_ARGUMENT;
    }
    ctx->budget.max_states = max_states;
    return FQC_OK;
}

fqc_status fqc_context_set_irreducible_budget(fqc_context* ctx, uint64_t budget) {
    if (!ctx)
        return FQC_INVALID_ARGUMENT;
    if (budget == 0) {
        ctx->error = "irreducible budget must be positive";
        return FQC_INVALID_ARGUMENT;
    }
    ctx->irreducible_budget = budget;
    return FQC_OK;
}

fqc_status fqc_context_set_threads(fqc_context* ctx, unsigned threads) {
    if (!ctx)
        return FQC_INVALID_ARGUMENT;
    if (threads == 0) {
        ctx->error = "threads must be positive";
        return FQC_INVALID_ARGUMENT;
    }
    ctx->threads = threads;
    return FQC_OK;
}

const char* fqc_context_last_error(const fqc_context* ctx) {
    return ctx ? ctx->error.c_str() : "context is null";
}

const char* fqc_report_string(const fqc_report* report, fqc_format format) {
    if (!report)
        return nullptr;
    switch (format) {
    case FQC_FORMAT_JSON: return report->json.c_str();
    case FQC_FORMAT_CSV: return report->csv.empty() ? nullptr : report->csv.c_str();
    case FQC_FORMAT_TEXT: return report->text.c_str();
    }
    return nullptr;
}

int fqc_report_passed(const fqc_report* report) {
    return report ? report->passed : -1;
}

void fqc_report_destroy(fqc_report* report) {
    delete report;
}

fqc_status fqc_joint(fqc_context* ctx, unsigned n, uint64_t q, const fqc_constraint* constraints,
                     size_t count, fqc_method method, fqc_report** out) {
    return guarded(ctx, out, [&] {
        const auto cs = to_constraints(constraints, count);
        const char* name = method_name(method);
        if (n == 0)
            throw fqc::InvalidArgument("n must be >= 1");
        fqc::split_prime_power(q);
        std::optional<fqc::BigRational> formula, brute;
        if (method != FQC_METHOD_BRUTE)
            formula = fqc::mat_joint_prob(n, q, cs);
        if (method != FQC_METHOD_FORMULA) {
            const auto degrees = fqc::constraint_degrees(cs);
            brute = fqc::enumerate_matrix_distribution(n, q, degrees, ctx->budget, ctx->threads)
                        .probability(cs);
        }
        json head{{"n", n}, {"q", q}, {"constraints", constraints_json(cs)}, {"method", name}};
        return comparison_report(head, "cycle_index", "brute", formula, brute);
    });
}

fqc_status fqc_perm(fqc_context* ctx, unsigned n, const fqc_constraint* constraints, size_t count,
                    fqc_method method, fqc_report** out) {
    return guarded(ctx, out, [&] {
        const auto cs = to_constraints(constraints, count);
        const char* name = method_name(method);
        std::optional<fqc::BigRational> formula, brute;
        if (method != FQC_METHOD_BRUTE)
            formula = fqc::sym_joint_prob(n, cs);
        if (method != FQC_METHOD_FORMULA) {
            const auto degrees = fqc::constraint_degrees(cs);
            brute = fqc::enumerate_perm_distribution(n, degrees, ctx->budget).probability(cs);
        }
        json head{{"n", n}, {"constraints", constraints_json(cs)}, {"method", name}};
        return comparison_report(head, "cycle_index", "brute", formula, brute);
    });
}

fqc_status fqc_limit_q(fqc_context* ctx, unsigned n, const fqc_constraint* constraints, size_t count,
                       const uint64_t* qs, size_t qs_count, fqc_report** out) {
    return guarded(ctx, out, [&] {
        const auto cs = to_constraints(constraints, count);
        const auto q_list = copy_array(qs, qs_count, "qs");
        if (q_list.empty())
            throw fqc::InvalidArgument("qs must be nonempty");
        const auto rep = fqc::limit_q_report(n, cs, q_list, ctx->threads);
        return fqc_report{rep.to_json(), rep.to_csv(), rep.to_json(), -1};
    });
}

fqc_status fqc_shepp_lloyd(fqc_context* ctx, const unsigned* zero_degrees, size_t zero_count,
                           const fqc_constraint* hits, size_t hit_count, unsigned order, fqc_report** out) {
    return guarded(ctx, out, [&] {
        const auto zeros = copy_array(zero_degrees, zero_count, "zero degrees");
        std::vector<fqc::Constraint> hit_list;
        for (const auto& h : copy_array(hits, hit_count, "hits"))
            hit_list.push_back({h.degree, h.count});
        const fqc::TruncSeries f = fqc::shepp_lloyd_series(zeros, hit_list, order);

        // coefficient limit: (1 - u) f(u) at u = 1
        fqc::PoissonValue limit{fqc::BigRational(1), fqc::BigRational(0), {}};
        for (unsigned d : zeros) {
            limit.exponent -= fqc::BigRational(1, d);
            limit.degrees.push_back(d);
        }
        for (const auto& h : hit_list) {
            limit.exponent -= fqc::BigRational(1, h.degree);
            limit.degrees.push_back(h.degree);
            fqc::BigRational term(fqc::BigInt(1), fqc::ipow(fqc::BigInt(h.degree), h.count) *
                                                      fqc::factorial(h.count));
            term.canonicalize();
            limit.coefficient *= 1 + term;
        }
        limit.exponent.canonicalize();

        json coeffs = json::array();
        std::string csv = "n,exact,float\n";
        for (unsigned n = 0; n <= order; ++n) {
            const fqc::BigRational c = f.coefficient(n);
            coeffs.push_back({{"n", n}, {"exact", fqc::fraction_string(c)}, {"float", c.get_d()}});
            csv += csv_line(std::to_string(n), c);
        }
        json hits_json = json::array();
        for (const auto& h : hit_list)
            hits_json.push_back({{"d", h.degree}, {"k", h.count}});
        const std::string j = json{{"zero_degrees", zeros},
                                   {"hits", hits_json},
                                   {"order", order},
                                   {"coefficients", coeffs},
                                   {"limit", {{"expression", limit.to_string()}, {"float", limit.value()}}}}
                                  .dump();
        return fqc_report{j, csv, j, -1};
    });
}

fqc_status fqc_jordan_landau(fqc_context* ctx, unsigned k, const uint64_t* ns, size_t ns_count,
                             fqc_report** out) {
    return guarded(ctx, out, [&] {
        const auto n_list = copy_array(ns, ns_count, "ns");
        if (n_list.empty())
            throw fqc::InvalidArgument("ns must be nonempty");
        json rows = json::array();
        std::ostringstream csv;
        csv.precision(17);
        csv << "n,k,p,ratio\n";
        int passed = -1;
        for (std::uint64_t n : n_list) {
            if (k > n)
                throw fqc::InvalidArgument("k must be <= n");
            const long double ratio = fqc::jl_ratio(n, k);
            const long double prob = fqc::stirling_cycle_prob(n, k);
            json row{{"n", n},
                     {"k", k},
                     {"probability", static_cast<double>(prob)},
                     {"ratio", static_cast<double>(ratio)},
                     {"distance_from_1", static_cast<double>(std::fabs(ratio - 1.0L))}};
            if (k == 2) {
                // p(n, 2) = H_{n-1} / n exactly
                const long double harmonic = fqc::harmonic_number(n - 1) / std::log(static_cast<long double>(n));
                const double gap = static_cast<double>(std::fabs(ratio - harmonic));
                row["harmonic_ratio"] = static_cast<double>(harmonic);
                row["harmonic_gap"] = gap;
                const bool ok = gap < 1e-12;
                passed = (passed != 0 && ok) ? 1 : 0;
            }
            csv << n << "," << k << "," << static_cast<double>(prob) << "," << static_cast<double>(ratio) << "\n";
            rows.push_back(row);
        }
        const std::string j = json{{"k", k}, {"rows", rows}}.dump();
        return fqc_report{j, csv.str(), j, passed};
    });
}

fqc_status fqc_cokernel(fqc_context* ctx, const fqc_sampler* sampler, const unsigned* degrees,
                        size_t degree_count, fqc_report** out) {
    return guarded(ctx, out, [&] {
        const auto d = copy_array(degrees, degree_count, "degrees");
        if (d.empty())
            throw fqc::InvalidArgument("degrees must be nonempty");
        const auto rep = fqc::monte_carlo_cokernel(sampler_config(ctx, sampler), d);
        return fqc_report{rep.to_json(), rep.to_csv(), rep.to_json(), rep.within_3sigma() ? 1 : 0};
    });
}

fqc_status fqc_conjecture(fqc_context* ctx, const fqc_sampler* sampler, const fqc_constraint* constraints,
                          size_t count, fqc_report** out) {
    return guarded(ctx, out, [&] {
        const auto cs = to_constraints(constraints, count);
        if (cs.empty())
            throw fqc::InvalidArgument("constraints must be nonempty");
        const auto rep = fqc::conjecture_experiment(sampler_config(ctx, sampler), cs);
        int passed = -1;
        if (rep.exact) {
            const double pe = rep.exact->get_d();
            const double sigma = std::sqrt(pe * (1 - pe) / static_cast<double>(rep.samples));
            passed = std::fabs(rep.simultaneous() - pe) <= 3 * sigma ? 1 : 0;
        }
        return fqc_report{rep.to_json(), rep.to_csv(), rep.to_json(), passed};
    });
}

fqc_status fqc_padic_table(fqc_context* ctx, const unsigned* degrees, size_t degree_count, const unsigned* ns,
                           size_t ns_count, const uint32_t* ps, size_t ps_count, fqc_report** out) {
    return guarded(ctx, out, [&] {
        const auto rep = fqc::padic_table_report(copy_array(degrees, degree_count, "degrees"),
                                                   copy_array(ns, ns_count, "ns"),
                                                   copy_array(ps, ps_count, "ps"), ctx->threads);
        return fqc_report{rep.to_json(), rep.to_csv(), rep.to_json(), -1};
    });
}

fqc_status fqc_verify(fqc_context* ctx, const fqc_verify_options* options, fqc_report** out) {
    return guarded(ctx, out, [&] {
        fqc::VerifyOptions opt;
        opt.threads = ctx->threads;
        opt.budget = ctx->budget;
        if (options) {
            for (const char* id : copy_array(options->only, options->only_count, "only"))
                opt.only.emplace_back(id ? id : "");
            if (options->qs_count)
                opt.qs = copy_array(options->qs, options->qs_count, "qs");
            if (options->nmax)
                opt.nmax = options->nmax;
            if (options->samples)
                opt.samples = options->samples;
            opt.seed = options->seed;
            if (options->fault)
                opt.fault = fqc::parse_fault(options->fault);
        }
        const auto rep = fqc::run_verify(opt);
        return fqc_report{rep.to_json(), rep.to_csv(), rep.to_text(), rep.passed() ? 1 : 0};
    });
}

fqc_status fqc_irreducibles(fqc_context* ctx, uint64_t q, unsigned degree, fqc_report** out) {
    return guarded(ctx, out, [&] {
        const fqc::Field field = fqc::Field::of_order(q);
        const auto polys = fqc::enumerate_irreducibles(field, degree, ctx->irreducible_budget);
        const fqc::BigInt expected = fqc::irreducible_count(q, degree);
        json list = json::array();
        std::string csv = "coefficients\n";
        for (const auto& f : polys) {
            list.push_back(poly_json(f));
            std::string row;
            for (std::size_t i = 0; i < f.coeffs().size(); ++i)
                row += (i ? " " : "") + std::to_string(f.coeffs()[i]);
            csv += row + "\n";
        }
        const bool agree = expected == fqc::BigInt(static_cast<unsigned long>(polys.size()));
        const std::string j = json{{"q", q},
                                   {"degree", degree},
                                   {"count", polys.size()},
                                   {"necklace_count", expected.get_str()},
                                   {"polynomials", list}}
                                  .dump();
        return fqc_report{j, csv, j, agree ? 1 : 0};
    });
}

fqc_status fqc_factor_profile(fqc_context* ctx, uint64_t q, const uint32_t* coeffs, size_t count,
                              fqc_report** out) {
    return guarded(ctx, out, [&] {
        const fqc::Field field = fqc::Field::of_order(q);
        const auto c = copy_array(coeffs, count, "coefficients");
        for (auto x : c)
            if (x >= q)
                throw fqc::InvalidArgument("coefficient out of range for F_q");
        const fqc::MonicPoly f(fqc::Coeffs(c.begin(), c.end()));
        const fqc::FactorProfile profile = fqc::factor_degree_profile(field, f);
        json prof = json::object();
        std::string csv = "degree,count\n";
        for (const auto& [d, m] : profile.counts()) {
            prof[std::to_string(d)] = m;
            csv += std::to_string(d) + "," + std::to_string(m) + "\n";
        }
        const std::string j = json{{"q", q}, {"coefficients", c}, {"profile", prof}}.dump();
        return fqc_report{j, csv, j, -1};
    });
}

fqc_status fqc_char_poly(fqc_context* ctx, uint64_t q, unsigned n, const uint32_t* entries, fqc_report** out) {
    return guarded(ctx, out, [&] {
        const fqc::Field field = fqc::Field::of_order(q);
        const auto e = copy_array(entries, std::size_t{n} * n, "entries");
        for (auto x : e)
            if (x >= q)
                throw fqc::InvalidArgument("entry out of range for F_q");
        const fqc::MonicPoly f = fqc::char_poly(field, fqc::MatrixFq(n, {e.begin(), e.end()}));
        std::string csv = "power,coefficient\n";
        for (std::size_t i = 0; i < f.coeffs().size(); ++i)
            csv += std::to_string(i) + "," + std::to_string(f.coeffs()[i]) + "\n";
        const std::string j = json{{"q", q}, {"n", n}, {"char_poly", poly_json(f)}}.dump();
        return fqc_report{j, csv, j, -1};
    });
}

} // extern "C"
