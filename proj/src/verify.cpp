#include "fqcycles/verify.hpp"

#include "fqcycles/cycleindex.hpp"
#include "fqcycles/padic.hpp"
#include "fqcycles/partitions.hpp"
#include "fqcycles/series.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace fqc {

namespace {

std::string partition_string(const Partition& lambda) {
    std::string out = "(";
    for (std::size_t i = 0; i < lambda.parts().size(); ++i)
        out += (i ? "," : "") + std::to_string(lambda.parts()[i]);
    return out + ")";
}

std::string mismatch(const std::string& where, const std::string& lhs_name, const BigRational& lhs,
                     const std::string& rhs_name, const BigRational& rhs) {
    return where + ": " + lhs_name + " " + fraction_string(lhs) + " != " + rhs_name + " " +
           fraction_string(rhs);
}

class Suite {
  public:
    explicit Suite(const VerifyOptions& opt) : opt_(opt) {}

    BigInt mac(const BigInt& q, const Partition& lambda) const {
        return macdonald_aut(q, lambda) + (opt_.fault == Fault::macdonald ? 1 : 0);
    }
    BigInt nilpotent_closed(std::uint64_t q, unsigned n) const {
        return ipow(BigInt(static_cast<unsigned long>(q)), n * (n - 1)) +
               (opt_.fault == Fault::nilpotent ? 1 : 0);
    }
    BigInt sf_closed(std::uint64_t q, unsigned n) const {
        return squarefree_count(q, n) + (opt_.fault == Fault::squarefree ? 1 : 0);
    }
    BigInt sf0_closed(std::uint64_t q, unsigned n) const {
        return squarefree_nonzero_constant_count(q, n) + (opt_.fault == Fault::squarefree ? 1 : 0);
    }

    CheckResult key() const {
        CheckResult r{"key", "sum over partitions of 1/|Aut| against its product form", true, ""};
        for (std::uint64_t q : opt_.qs) {
            split_prime_power(q);
            const BigInt qq(static_cast<unsigned long>(q));
            const BigRational qinv(BigInt(1), qq);
            std::vector<MultiPoly> lhs(opt_.nmax + 1), rhs(opt_.nmax + 1);
            BigRational denom = 1;
            for (unsigned n = 0; n <= opt_.nmax; ++n) {
                BigRational sum = 0;
                for_each_partition(n, [&](const Partition& lambda) {
                    sum += BigRational(BigInt(1), mac(qq, lambda));
                });
                sum.canonicalize();
                lhs[n] = MultiPoly(sum);
                if (n)
                    denom *= 1 - rpow(qinv, n);
                BigRational closed = rpow(qinv, n) / denom;
                closed.canonicalize();
                rhs[n] = MultiPoly(closed);
            }
            const TruncSeries a(opt_.nmax, lhs), b(opt_.nmax, rhs);
            for (unsigned n = 0; n <= opt_.nmax; ++n)
                if (a.coefficient(n) != b.coefficient(n)) {
                    r.passed = false;
                    r.detail = mismatch("q=" + std::to_string(q) + " coefficient X^" + std::to_string(n),
                                        "partition sum", a.coefficient(n), "product form",
                                        b.coefficient(n));
                    return r;
                }
        }
        for (unsigned n = 1; n <= opt_.nmax; ++n)
            if (auto bad = bounded_partition_identity_check(n, opt_.nmax)) {
                r.passed = false;
                r.detail = "at most " + std::to_string(n) + " parts vs parts at most " +
                           std::to_string(n) + ", coefficient X^" + std::to_string(bad->degree) +
                           ": " + bad->lhs.get_str() + " != " + bad->rhs.get_str();
                return r;
            }
        r.detail = "coefficients X^0..X^" + std::to_string(opt_.nmax) + " agree";
        return r;
    }

    CheckResult macdonald() const {
        CheckResult r{"mac", "Macdonald automorphism formula against direct counting", true, ""};
        std::size_t compared = 0;
        for (std::uint32_t q : {2u, 3u}) {
            for (unsigned size = 1; saturating_pow(q, size) <= 4096; ++size)
                for (const Partition& lambda : enumerate_partitions(size)) {
                    const BigInt formula = mac(BigInt(q), lambda);
                    const BigInt brute = aut_brute_force(q, lambda);
                    ++compared;
                    if (formula != brute) {
                        r.passed = false;
                        r.detail = "q=" + std::to_string(q) + " lambda=" + partition_string(lambda) +
                                   ": formula " + formula.get_str() + " != count " + brute.get_str();
                        return r;
                    }
                }
        }
        r.detail = std::to_string(compared) + " partitions agree";
        return r;
    }

    CheckResult fine_herstein() const {
        CheckResult r{"fine-herstein", "nilpotent matrix count q^(n(n-1))", true, ""};
        const std::pair<unsigned, std::uint64_t> cases[] = {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}};
        for (auto [n, q] : cases) {
            const BigInt counted = nilpotent_count(n, q, opt_.budget, opt_.threads);
            const BigInt closed = nilpotent_closed(q, n);
            if (counted != closed) {
                r.passed = false;
                r.detail = "n=" + std::to_string(n) + " q=" + std::to_string(q) + ": enumeration " +
                           counted.get_str() + " != closed form " + closed.get_str();
                return r;
            }
        }
        r.detail = "5 (n, q) pairs agree";
        return r;
    }

    CheckResult squarefree() const {
        CheckResult r{"sf", "square-free polynomial count and matrix fraction bound", true, ""};
        for (std::uint64_t q : {2u, 3u}) {
            const Field field = Field::of_order(q);
            for (unsigned n = 2; n <= 4; ++n) {
                const BigInt counted = enumerate_squarefree_polys(field, n, false);
                const BigInt closed = sf_closed(q, n);
                if (counted != closed) {
                    r.passed = false;
                    r.detail = "n=" + std::to_string(n) + " q=" + std::to_string(q) + ": enumeration " +
                               counted.get_str() + " != closed form " + closed.get_str();
                    return r;
                }
            }
        }
        const std::pair<unsigned, std::uint64_t> bound_cases[] = {{1, 2}, {2, 2}, {2, 3}, {3, 2}};
        for (auto [n, q] : bound_cases) {
            const auto rep = squarefree_fraction_bound_check(n, q, opt_.budget, opt_.threads);
            if (!rep.holds) {
                r.passed = false;
                r.detail = mismatch("n=" + std::to_string(n) + " q=" + std::to_string(q),
                                    "square-free fraction", rep.fraction, "is below bound",
                                    rep.lower_bound);
                return r;
            }
        }
        r.detail = "counts for n=2..4, q=2,3 and 4 fraction bounds hold";
        return r;
    }

    CheckResult squarefree_nonzero_constant() const {
        CheckResult r{"sf-nonzero-constant", "square-free polynomials with f(0) != 0", true, ""};
        for (std::uint64_t q : {2u, 3u}) {
            const Field field = Field::of_order(q);
            for (unsigned n = 2; n <= 4; ++n) {
                const BigInt counted = enumerate_squarefree_polys(field, n, true);
                const BigInt closed = sf0_closed(q, n);
                if (counted != closed) {
                    r.passed = false;
                    r.detail = "n=" + std::to_string(n) + " q=" + std::to_string(q) + ": enumeration " +
                               counted.get_str() + " != closed form " + closed.get_str();
                    return r;
                }
            }
        }
        r.detail = "n=2..4, q=2,3 agree";
        return r;
    }

    CheckResult fac1() const {
        CheckResult r{"fac1", "symmetric-group cycle index against prod_d exp(x_d u^d / d)", true, ""};
        const unsigned order = opt_.nmax;
        std::vector<unsigned> tracked(order);
        for (unsigned d = 1; d <= order; ++d)
            tracked[d - 1] = d;
        TruncSeries product = TruncSeries::constant(order, MultiPoly(BigRational(1)));
        for (unsigned d = 1; d <= order; ++d)
            product = product * series_exp(TruncSeries::monomial(
                                    order, d, MultiPoly(MarkerMonomial::x(d), BigRational(1, d))));
        for (unsigned n = 0; n <= order; ++n) {
            const MultiPoly partition_form = sym_cycle_index(n, tracked);
            if (partition_form != product[n]) {
                r.passed = false;
                for (const auto& [mono, c] : product[n].terms())
                    if (partition_form.coefficient(mono) != c) {
                        r.detail = mismatch("u^" + std::to_string(n) + " " + mono.to_string(),
                                            "partition formula", partition_form.coefficient(mono),
                                            "exponential product", c);
                        return r;
                    }
                r.detail = "u^" + std::to_string(n) + ": partition formula has extra terms";
                return r;
            }
        }
        r.detail = "u^0..u^" + std::to_string(order) + " agree";
        return r;
    }

    CheckResult issue() const {
        CheckResult r{"issue", "Shepp-Lloyd closed form against S_n probabilities", true, ""};
        constexpr unsigned kOrder = 12;
        constexpr unsigned kMaxDegree = 4;
        constexpr unsigned kMaxHit = 3;
        const std::vector<unsigned> tracked{1, 2, 3, 4};
        std::vector<JointDistribution> sym;
        for (unsigned n = 0; n <= kOrder; ++n)
            sym.push_back(sym_distribution(n, tracked));

        // state[d-1]: 0 absent, 1 forced to zero, 1 + k a hit with k cycles
        std::vector<unsigned> state(kMaxDegree, 0);
        std::size_t evaluations = 0;
        for (;;) {
            std::vector<unsigned> zeros;
            std::vector<Constraint> hits;
            for (unsigned d = 1; d <= kMaxDegree; ++d) {
                if (state[d - 1] == 1)
                    zeros.push_back(d);
                else if (state[d - 1] > 1)
                    hits.push_back({d, state[d - 1] - 1});
            }
            const TruncSeries f = shepp_lloyd_series(zeros, hits, kOrder);
            for (unsigned n = 0; n <= kOrder; ++n) {
                BigRational direct = 0;
                for (const auto& [profile, p] : sym[n].entries()) {
                    bool ok = std::all_of(zeros.begin(), zeros.end(),
                                          [&](unsigned d) { return profile.count(d) == 0; });
                    for (const auto& h : hits) {
                        const unsigned m = profile.count(h.degree);
                        ok = ok && (m == 0 || m == h.count);
                    }
                    if (ok)
                        direct += p;
                }
                if (direct != f.coefficient(n)) {
                    std::string where = "u^" + std::to_string(n) + " zeros{";
                    for (unsigned d : zeros)
                        where += std::to_string(d) + ";";
                    where += "} hits{";
                    for (const auto& h : hits)
                        where += std::to_string(h.degree) + ":" + std::to_string(h.count) + ";";
                    r.passed = false;
                    r.detail = mismatch(where + "}", "closed form", f.coefficient(n), "S_n sum", direct);
                    return r;
                }
            }
            ++evaluations;
            unsigned i = 0;
            while (i < kMaxDegree && ++state[i] > kMaxHit + 1)
                state[i++] = 0;
            if (i == kMaxDegree)
                break;
        }
        r.detail = std::to_string(evaluations) + " evaluations agree through u^" + std::to_string(kOrder);
        return r;
    }

    CheckResult red() const {
        CheckResult r{"red", "cokernel-zero frequency at K=1 against the exact mod-p value", true, ""};
        const std::pair<std::uint32_t, unsigned> cases[] = {{2, 2}, {3, 2}, {5, 3}};
        const unsigned degrees[] = {1};
        std::ostringstream summary;
        for (auto [p, n] : cases) {
            SamplerConfig cfg;
            cfg.p = p;
            cfg.n = n;
            cfg.precision = 1;
            cfg.samples = opt_.samples;
            cfg.seed = opt_.seed;
            cfg.threads = opt_.threads;
            const CokernelReport rep = monte_carlo_cokernel(cfg, degrees);
            const std::string where = "p=" + std::to_string(p) + " n=" + std::to_string(n);
            if (!rep.within_3sigma()) {
                r.passed = false;
                std::ostringstream msg;
                msg.precision(10);
                msg << where << ": empirical " << rep.empirical() << " outside 3 sigma of exact "
                    << fraction_string(rep.exact);
                r.detail = msg.str();
                return r;
            }
        }
        r.detail = "3 (p, n) pairs within 3 sigma at " + std::to_string(opt_.samples) + " samples";
        return r;
    }

  private:
    const VerifyOptions& opt_;
};

nlohmann::json check_json(const CheckResult& c) {
    return {{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}};
}

} // namespace

Fault parse_fault(const std::string& name) {
    if (name == "none" || name.empty())
        return Fault::none;
    if (name == "mac" || name == "macdonald")
        return Fault::macdonald;
    if (name == "nilpotent")
        return Fault::nilpotent;
    if (name == "squarefree")
        return Fault::squarefree;
    throw InvalidArgument("unknown fault '" + name + "' (expected mac, nilpotent or squarefree)");
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_text() const {
    std::string out;
    for (const auto& c : checks)
        out += std::string(c.passed ? "PASS " : "FAIL ") + c.id + ": " + c.detail + "\n";
    return out;
}

std::string VerifyReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back(check_json(c));
    return nlohmann::json{{"checks", arr}, {"passed", passed()}}.dump();
}

std::string VerifyReport::to_csv() const {
    std::string out = "id,passed,detail\n";
    for (const auto& c : checks) {
        std::string detail = c.detail;
        std::replace(detail.begin(), detail.end(), '"', '\'');
        out += c.id + "," + (c.passed ? "true" : "false") + ",\"" + detail + "\"\n";
    }
    return out;
}

const std::vector<std::string>& verify_check_ids() {
    static const std::vector<std::string> ids{"key", "mac", "fine-herstein", "sf",
                                              "sf-nonzero-constant", "fac1", "issue", "red"};
    return ids;
}

VerifyReport run_verify(const VerifyOptions& options) {
    const auto& ids = verify_check_ids();
    for (const auto& id : options.only)
        if (std::find(ids.begin(), ids.end(), id) == ids.end())
            throw InvalidArgument("unknown check '" + id + "'");
    if (options.qs.empty())
        throw InvalidArgument("verify: --qs must be nonempty");

    const Suite suite(options);
    const std::vector<std::pair<std::string, std::function<CheckResult()>>> table{
        {"key", [&] { return suite.key(); }},
        {"mac", [&] { return suite.macdonald(); }},
        {"fine-herstein", [&] { return suite.fine_herstein(); }},
        {"sf", [&] { return suite.squarefree(); }},
        {"sf-nonzero-constant", [&] { return suite.squarefree_nonzero_constant(); }},
        {"fac1", [&] { return suite.fac1(); }},
        {"issue", [&] { return suite.issue(); }},
        {"red", [&] { return suite.red(); }},
    };
    VerifyReport report;
    for (const auto& [id, run] : table) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), id) == options.only.end())
            continue;
        try {
            report.checks.push_back(run());
        } catch (const IdentityFailure& e) {
            report.checks.push_back({id, "", false, e.what()});
        }
    }
    return report;
}

} // namespace fqc
