#include "fqcycles/cycleindex.hpp"

#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fqc {

void validate_constraints(std::span<const Constraint> constraints) {
    std::set<unsigned> seen;
    for (const auto& c : constraints) {
        if (c.degree == 0)
            throw InvalidArgument("constraint degree must be >= 1");
        if (!seen.insert(c.degree).second)
            throw InvalidArgument("constraint degrees must be distinct (repeated d=" +
                                  std::to_string(c.degree) + ")");
    }
}

std::vector<unsigned> constraint_degrees(std::span<const Constraint> constraints) {
    std::vector<unsigned> out;
    for (const auto& c : constraints)
        out.push_back(c.degree);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool profile_matches(const FactorProfile& profile, std::span<const Constraint> constraints) {
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const Constraint& c) { return profile.count(c.degree) == c.count; });
}

JointDistribution::JointDistribution(unsigned n, std::optional<std::uint64_t> q,
                                     std::vector<unsigned> tracked)
    : n_(n), q_(q), tracked_(std::move(tracked)) {
    std::sort(tracked_.begin(), tracked_.end());
    tracked_.erase(std::unique(tracked_.begin(), tracked_.end()), tracked_.end());
}

void JointDistribution::add(const FactorProfile& profile, const BigRational& p) {
    if (p == 0)
        return;
    auto [it, inserted] = entries_.try_emplace(profile.restricted(tracked_), p);
    if (!inserted)
        it->second += p;
}

BigRational JointDistribution::probability(std::span<const Constraint> constraints) const {
    for (const auto& c : constraints)
        if (!std::binary_search(tracked_.begin(), tracked_.end(), c.degree))
            throw InvalidArgument("degree " + std::to_string(c.degree) + " is not tracked");
    BigRational out = 0;
    for (const auto& [profile, p] : entries_)
        if (profile_matches(profile, constraints))
            out += p;
    return out;
}

BigRational JointDistribution::total() const {
    BigRational out = 0;
    for (const auto& [profile, p] : entries_)
        out += p;
    return out;
}

std::string JointDistribution::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [profile, p] : entries_) {
        nlohmann::json prof = nlohmann::json::object();
        for (unsigned d : tracked_)
            prof[std::to_string(d)] = profile.count(d);
        entries.push_back({{"profile", prof}, {"exact", fraction_string(p)}, {"float", p.get_d()}});
    }
    nlohmann::json out{{"n", n_},
                       {"context", q_ ? "matrix" : "permutation"},
                       {"tracked", tracked_},
                       {"entries", std::move(entries)},
                       {"total", fraction_string(total())}};
    out["q"] = q_ ? nlohmann::json(*q_) : nlohmann::json(nullptr);
    return out.dump();
}

BigRational cycle_type_fraction(const Partition& lambda) {
    BigInt z = 1;
    for (unsigned i = 1; i <= lambda.largest(); ++i) {
        const unsigned m = lambda.multiplicity(i);
        if (m)
            z *= factorial(m) * ipow(BigInt(i), m);
    }
    return BigRational(BigInt(1), z);
}

namespace {

FactorProfile cycle_profile(const Partition& lambda) {
    FactorProfile out;
    for (unsigned d = 1; d <= lambda.largest(); ++d)
        out.add(d, lambda.multiplicity(d));
    return out;
}

} // namespace

MultiPoly sym_cycle_index(unsigned n, std::span<const unsigned> tracked) {
    MultiPoly out;
    for_each_partition(n, [&](const Partition& lambda) {
        MarkerMonomial mono;
        for (unsigned d : tracked)
            mono = mono * MarkerMonomial::x(d, lambda.multiplicity(d));
        out.add_term(mono, cycle_type_fraction(lambda));
    });
    return out;
}

BigRational sym_joint_prob(unsigned n, std::span<const Constraint> constraints) {
    validate_constraints(constraints);
    BigRational out = 0;
    for_each_partition(n, [&](const Partition& lambda) {
        for (const auto& c : constraints)
            if (lambda.multiplicity(c.degree) != c.count)
                return;
        out += cycle_type_fraction(lambda);
    });
    return out;
}

JointDistribution sym_distribution(unsigned n, std::span<const unsigned> tracked) {
    JointDistribution out(n, std::nullopt, {tracked.begin(), tracked.end()});
    for_each_partition(n, [&](const Partition& lambda) {
        out.add(cycle_profile(lambda), cycle_type_fraction(lambda));
    });
    return out;
}

TruncSeries mat_degree_factor(std::uint64_t q, unsigned d, unsigned order, bool tracked_marker) {
    const BigInt qd = ipow(BigInt(static_cast<unsigned long>(q)), d);
    std::vector<MultiPoly> coeffs(order + 1);
    for (unsigned m = 0; m * d <= order; ++m) {
        BigRational weight = 0;
        for_each_partition(m, [&](const Partition& lambda) {
            weight += BigRational(BigInt(1), macdonald_aut(qd, lambda));
        });
        weight.canonicalize();
        const MarkerMonomial mono = tracked_marker ? MarkerMonomial::x(d, m) : MarkerMonomial{};
        coeffs[m * d] = MultiPoly(mono, weight);
    }
    return TruncSeries(order, std::move(coeffs));
}

TruncSeries mat_cycle_index_series(std::uint64_t q, unsigned order, std::span<const unsigned> tracked) {
    split_prime_power(q);
    TruncSeries out = TruncSeries::constant(order, MultiPoly(BigRational(1)));
    for (unsigned d = 1; d <= order; ++d) {
        const bool marked = std::find(tracked.begin(), tracked.end(), d) != tracked.end();
        out = out * series_pow(mat_degree_factor(q, d, order, marked), irreducible_count(q, d));
    }
    return out;
}

BigRational gl_fraction(std::uint64_t q, unsigned n) {
    BigRational out(gl_order(q, n), ipow(BigInt(static_cast<unsigned long>(q)), n * n));
    out.canonicalize();
    return out;
}

JointDistribution mat_distribution(unsigned n, std::uint64_t q, std::span<const unsigned> tracked) {
    std::vector<unsigned> marked;
    for (unsigned d : tracked)
        if (d >= 1 && d <= n)
            marked.push_back(d);
    const TruncSeries z = mat_cycle_index_series(q, n, marked);
    const BigRational norm = gl_fraction(q, n);
    JointDistribution out(n, q, {tracked.begin(), tracked.end()});
    for (const auto& [mono, c] : z[n].terms()) {
        FactorProfile profile;
        for (unsigned d : marked)
            profile.add(d, mono.exponent_of_degree(d));
        out.add(profile, c * norm);
    }
    return out;
}

BigRational mat_joint_prob(unsigned n, std::uint64_t q, std::span<const Constraint> constraints) {
    validate_constraints(constraints);
    return mat_distribution(n, q, constraint_degrees(constraints)).probability(constraints);
}

std::string LimitReport::to_json() const {
    nlohmann::json cons = nlohmann::json::array();
    for (const auto& c : constraints)
        cons.push_back({{"d", c.degree}, {"k", c.count}});
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows)
        rows_json.push_back({{"q", r.q},
                             {"exact", fraction_string(r.exact)},
                             {"float", r.exact.get_d()},
                             {"gap", fraction_string(r.gap)},
                             {"gap_float", r.gap.get_d()}});
    return nlohmann::json{{"n", n},
                          {"constraints", cons},
                          {"target", fraction_string(target)},
                          {"target_float", target.get_d()},
                          {"rows", rows_json},
                          {"weakly_decreasing", weakly_decreasing()},
                          {"monotonicity_failures", monotonicity_failures}}
        .dump();
}

std::string LimitReport::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "q,exact,float,gap\n";
    for (const auto& r : rows)
        out << r.q << "," << fraction_string(r.exact) << "," << r.exact.get_d() << ","
            << r.gap.get_d() << "\n";
    return out.str();
}

LimitReport limit_q_report(unsigned n, std::span<const Constraint> constraints,
                           std::span<const std::uint64_t> qs, unsigned threads) {
    validate_constraints(constraints);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        split_prime_power(qs[i]);
        if (i && qs[i] <= qs[i - 1])
            throw InvalidArgument("limit_q_report: q values must be strictly increasing");
    }
    LimitReport report;
    report.n = n;
    report.constraints.assign(constraints.begin(), constraints.end());
    report.target = sym_joint_prob(n, constraints);
    report.rows.resize(qs.size());
    detail::parallel_shards(qs.size(), threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const BigRational exact = mat_joint_prob(n, qs[i], constraints);
            report.rows[i] = LimitRow{qs[i], exact, abs(exact - report.target)};
        }
    });
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        if (report.rows[i].gap > report.rows[i - 1].gap)
            report.monotonicity_failures.push_back(report.rows[i].q);
    return report;
}

TruncSeries shepp_lloyd_series(std::span<const unsigned> zero_degrees,
                               std::span<const Constraint> hits, unsigned order) {
    std::vector<Constraint> all;
    for (unsigned d : zero_degrees)
        all.push_back({d, 0});
    for (const auto& h : hits) {
        if (h.count == 0)
            throw InvalidArgument("shepp_lloyd_series: hit constraints need k >= 1");
        all.push_back(h);
    }
    validate_constraints(all);

    TruncSeries exponent(order);
    for (const auto& c : all)
        exponent += TruncSeries::monomial(order, c.degree, MultiPoly(BigRational(-1, c.degree)));
    TruncSeries out = TruncSeries::geometric(order) * series_exp(exponent);
    for (const auto& h : hits) {
        // 1 + (u^d / d)^k / k!
        BigRational c(BigInt(1), ipow(BigInt(h.degree), h.count) * factorial(h.count));
        c.canonicalize();
        TruncSeries factor = TruncSeries::constant(order, MultiPoly(BigRational(1)));
        if (std::uint64_t{h.degree} * h.count <= order)
            factor += TruncSeries::monomial(order, h.degree * h.count, MultiPoly(c));
        out = out * factor;
    }
    return out;
}

double PoissonValue::value() const {
    return coefficient.get_d() * std::exp(exponent.get_d());
}

std::string PoissonValue::to_string() const {
    return fraction_string(coefficient) + "*e^(" + fraction_string(exponent) + ")";
}

PoissonValue poisson_limit(std::span<const Constraint> constraints) {
    validate_constraints(constraints);
    PoissonValue out{BigRational(1), BigRational(0), {}};
    for (const auto& c : constraints) {
        BigRational term(BigInt(1), ipow(BigInt(c.degree), c.count) * factorial(c.count));
        term.canonicalize();
        out.coefficient *= term;
        out.exponent -= BigRational(1, c.degree);
        out.degrees.push_back(c.degree);
    }
    out.exponent.canonicalize();
    return out;
}

} // namespace fqc
