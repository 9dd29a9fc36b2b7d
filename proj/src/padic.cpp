#include "fqcycles/padic.hpp"

#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace fqc {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    // extended Euclid on signed 128-bit values; a must be a unit mod m
    __int128 r0 = m, r1 = a % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const __int128 t = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
    }
    if (r0 != 1)
        throw Error("invmod: not a unit");
    __int128 out = s0 % static_cast<__int128>(m);
    if (out < 0)
        out += m;
    return static_cast<std::uint64_t>(out);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stateless stream: draw i is a hash of (key, i).
class DigitStream {
  public:
    DigitStream(std::uint64_t seed, std::uint64_t sample, std::uint64_t entry)
        : key_(splitmix64(splitmix64(splitmix64(seed) ^ sample) ^ entry)) {}

    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        for (;;) {
            const std::uint64_t x = splitmix64(key_ + counter_++);
            if (x < limit)
                return x % bound;
        }
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t checked_modulus(std::uint32_t p, unsigned precision) {
    if (!is_prime(p))
        throw InvalidArgument("p-adic matrix: p must be prime");
    if (precision == 0)
        throw InvalidArgument("p-adic matrix: precision must be >= 1");
    const std::uint64_t m = saturating_pow(p, precision);
    if (m >= (std::uint64_t{1} << 62))
        throw InvalidArgument("p-adic matrix: p^K too large");
    return m;
}

nlohmann::json poisson_json(const PoissonValue& v) {
    return {{"expression", v.to_string()}, {"float", v.value()}};
}

} // namespace

PadicMatrix::PadicMatrix(std::uint32_t p, unsigned precision, unsigned n,
                         std::vector<std::uint64_t> entries)
    : p_(p), precision_(precision), n_(n), modulus_(checked_modulus(p, precision)),
      entries_(std::move(entries)) {
    if (entries_.size() != std::size_t{n} * n)
        throw InvalidArgument("p-adic matrix is not square");
    for (auto& x : entries_)
        x %= modulus_;
}

PadicMatrix PadicMatrix::identity(std::uint32_t p, unsigned precision, unsigned n) {
    std::vector<std::uint64_t> e(std::size_t{n} * n, 0);
    for (unsigned i = 0; i < n; ++i)
        e[i * n + i] = 1;
    return PadicMatrix(p, precision, n, std::move(e));
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& other) const {
    std::vector<std::uint64_t> out(entries_.size(), 0);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned k = 0; k < n_; ++k) {
            const std::uint64_t a = (*this)(i, k);
            if (a == 0)
                continue;
            for (unsigned j = 0; j < n_; ++j)
                out[i * n_ + j] = (out[i * n_ + j] + mulmod(a, other(k, j), modulus_)) % modulus_;
        }
    return PadicMatrix(p_, precision_, n_, std::move(out));
}

PadicMatrix PadicMatrix::operator+(const PadicMatrix& other) const {
    std::vector<std::uint64_t> out(entries_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (entries_[i] + other.entries_[i]) % modulus_;
    return PadicMatrix(p_, precision_, n_, std::move(out));
}

PadicMatrix PadicMatrix::scaled(std::uint64_t c) const {
    std::vector<std::uint64_t> out(entries_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mulmod(entries_[i], c % modulus_, modulus_);
    return PadicMatrix(p_, precision_, n_, std::move(out));
}

bool CokernelProfile::is_zero() const {
    return std::all_of(valuations.begin(), valuations.end(), [](unsigned v) { return v == 0; });
}

unsigned CokernelProfile::total_valuation() const {
    return std::accumulate(valuations.begin(), valuations.end(), 0u);
}

CokernelProfile smith_valuations(const PadicMatrix& m) {
    const unsigned n = m.n();
    const unsigned K = m.precision();
    const std::uint64_t mod = m.modulus();
    const std::uint64_t p = m.p();
    std::vector<std::uint64_t> a = m.entries();
    auto at = [&](unsigned i, unsigned j) -> std::uint64_t& { return a[i * n + j]; };
    auto valuation = [&](std::uint64_t x) {
        if (x == 0)
            return K;
        unsigned v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    };

    CokernelProfile out;
    out.precision = K;
    for (unsigned s = 0; s < n; ++s) {
        unsigned best = K, bi = s, bj = s;
        for (unsigned i = s; i < n && best > 0; ++i)
            for (unsigned j = s; j < n; ++j) {
                const unsigned v = valuation(at(i, j));
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0)
                        break;
                }
            }
        if (best == K) {
            out.valuations.resize(n, K);
            break;
        }
        if (bi != s)
            for (unsigned j = 0; j < n; ++j)
                std::swap(at(s, j), at(bi, j));
        if (bj != s)
            for (unsigned i = 0; i < n; ++i)
                std::swap(at(i, s), at(i, bj));

        std::uint64_t pv = 1;
        for (unsigned k = 0; k < best; ++k)
            pv *= p;
        const std::uint64_t unit_inv = invmod(at(s, s) / pv, mod);
        for (unsigned i = s + 1; i < n; ++i) {
            if (at(i, s) == 0)
                continue;
            const std::uint64_t c = mulmod(at(i, s) / pv, unit_inv, mod);
            for (unsigned j = s; j < n; ++j)
                at(i, j) = submod(at(i, j), mulmod(c, at(s, j), mod), mod);
        }
        // column operations only touch row s now that column s is cleared below the pivot
        for (unsigned j = s + 1; j < n; ++j)
            at(s, j) = 0;
        out.valuations.push_back(best);
    }
    out.exact = std::all_of(out.valuations.begin(), out.valuations.end(),
                            [&](unsigned v) { return v < K; });
    return out;
}

PadicMatrix evaluate_lift(const MonicPoly& poly, const PadicMatrix& a) {
    const auto& c = poly.coeffs();
    for (FqElem x : c)
        if (x >= a.p())
            throw InvalidArgument("evaluate_lift: polynomial is not over F_p");
    const PadicMatrix id = PadicMatrix::identity(a.p(), a.precision(), a.n());
    PadicMatrix out = id.scaled(c.back());
    for (std::size_t i = c.size() - 1; i-- > 0;)
        out = out * a + id.scaled(c[i]);
    return out;
}

BigRational coker_zero_prob_exact(std::uint32_t p, unsigned n, std::span<const unsigned> degrees) {
    if (!is_prime(p))
        throw InvalidArgument("coker_zero_prob_exact: p must be prime");
    std::vector<Constraint> constraints;
    for (unsigned d : degrees)
        constraints.push_back({d, 0});
    return mat_joint_prob(n, p, constraints);
}

PadicMatrix sample_matrix(std::uint32_t p, unsigned precision, unsigned n, std::uint64_t seed,
                          std::uint64_t sample) {
    std::vector<std::uint64_t> entries(std::size_t{n} * n);
    for (std::size_t e = 0; e < entries.size(); ++e) {
        DigitStream stream(seed, sample, e);
        std::uint64_t value = 0, scale = 1;
        for (unsigned k = 0; k < precision; ++k) {
            value += stream.below(p) * scale;
            scale *= p;
        }
        entries[e] = value;
    }
    return PadicMatrix(p, precision, n, std::move(entries));
}

double CokernelReport::empirical() const {
    return static_cast<double>(hits) / static_cast<double>(samples);
}

double CokernelReport::ci99() const {
    const double ph = empirical();
    return kZ99 * std::sqrt(ph * (1.0 - ph) / static_cast<double>(samples));
}

double CokernelReport::sigma() const {
    const double pe = exact.get_d();
    return std::sqrt(pe * (1.0 - pe) / static_cast<double>(samples));
}

bool CokernelReport::within_ci99() const {
    return std::abs(empirical() - exact.get_d()) <= ci99();
}

bool CokernelReport::within_3sigma() const {
    return std::abs(empirical() - exact.get_d()) <= 3.0 * sigma();
}

std::string CokernelReport::to_json() const {
    return nlohmann::json{{"p", p},
                          {"n", n},
                          {"K", precision},
                          {"event", "coker(P(A)) = 0 for all monic irreducible P of the listed degrees"},
                          {"degrees", degrees},
                          {"samples", samples},
                          {"seed", seed},
                          {"hits", hits},
                          {"empirical", empirical()},
                          {"ci99", ci99()},
                          {"exact", fraction_string(exact)},
                          {"exact_float", exact.get_d()},
                          {"within_ci99", within_ci99()},
                          {"within_3sigma", within_3sigma()},
                          {"poisson_target", poisson_json(poisson_target)},
                          {"saturated_fraction",
                           static_cast<double>(saturated) / static_cast<double>(samples)}}
        .dump();
}

std::string CokernelReport::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "p,n,K,samples,empirical,ci99,exact,exact_float,within_3sigma,saturated_fraction\n";
    out << p << "," << n << "," << precision << "," << samples << "," << empirical() << ","
        << ci99() << "," << fraction_string(exact) << "," << exact.get_d() << ","
        << (within_3sigma() ? "true" : "false") << ","
        << static_cast<double>(saturated) / static_cast<double>(samples) << "\n";
    return out.str();
}

namespace {

std::vector<std::vector<MonicPoly>> irreducibles_by_degree(std::uint32_t p,
                                                          std::span<const unsigned> degrees,
                                                          std::uint64_t budget) {
    const Field field = Field::prime(p);
    std::vector<std::vector<MonicPoly>> out;
    for (unsigned d : degrees)
        out.push_back(enumerate_irreducibles(field, d, budget));
    return out;
}

} // namespace

CokernelReport monte_carlo_cokernel(const SamplerConfig& config, std::span<const unsigned> degrees) {
    if (config.samples == 0)
        throw InvalidArgument("monte_carlo_cokernel: samples must be >= 1");
    std::vector<Constraint> as_constraints;
    for (unsigned d : degrees)
        as_constraints.push_back({d, 0});
    validate_constraints(as_constraints);
    checked_modulus(config.p, config.precision);

    const auto irreducibles = irreducibles_by_degree(config.p, degrees, config.irreducible_budget);
    const unsigned workers = std::max(1u, config.threads);
    std::vector<std::uint64_t> hits(workers, 0), saturated(workers, 0);
    detail::parallel_shards(config.samples, workers, [&](unsigned shard, std::uint64_t begin,
                                                         std::uint64_t end) {
        for (std::uint64_t s = begin; s < end; ++s) {
            const PadicMatrix a = sample_matrix(config.p, config.precision, config.n, config.seed, s);
            bool all_zero = true, any_saturated = false;
            for (const auto& group : irreducibles)
                for (const auto& poly : group) {
                    const CokernelProfile prof = smith_valuations(evaluate_lift(poly, a));
                    all_zero = all_zero && prof.is_zero();
                    any_saturated = any_saturated || !prof.exact;
                }
            hits[shard] += all_zero;
            saturated[shard] += any_saturated;
        }
    });

    CokernelReport report;
    report.p = config.p;
    report.n = config.n;
    report.precision = config.precision;
    report.degrees.assign(degrees.begin(), degrees.end());
    report.samples = config.samples;
    report.seed = config.seed;
    report.hits = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    report.saturated = std::accumulate(saturated.begin(), saturated.end(), std::uint64_t{0});
    report.exact = coker_zero_prob_exact(config.p, config.n, degrees);
    if (report.exact != mat_joint_prob(config.n, config.p, as_constraints))
        throw IdentityFailure("coker_zero_prob_exact disagrees with mat_joint_prob");
    report.poisson_target = poisson_limit(as_constraints);
    return report;
}

double ConjectureReport::tuple_average() const {
    if (tuples.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto& t : tuples)
        sum += static_cast<double>(t.hits) / static_cast<double>(samples);
    return sum / static_cast<double>(tuples.size());
}

double ConjectureReport::simultaneous() const {
    return static_cast<double>(simultaneous_hits) / static_cast<double>(samples);
}

std::string ConjectureReport::to_json() const {
    nlohmann::json cons = nlohmann::json::array();
    for (const auto& c : constraints)
        cons.push_back({{"d", c.degree}, {"k", c.count}});
    nlohmann::json per_tuple = nlohmann::json::array();
    for (const auto& t : tuples) {
        nlohmann::json polys = nlohmann::json::array();
        for (const auto& poly : t.tuple)
            polys.push_back(poly.coeffs());
        const double f = static_cast<double>(t.hits) / static_cast<double>(samples);
        per_tuple.push_back({{"tuple", polys},
                             {"hits", t.hits},
                             {"empirical", f},
                             {"ci99", kZ99 * std::sqrt(f * (1 - f) / static_cast<double>(samples))}});
    }
    const double sim = simultaneous();
    nlohmann::json out{
        {"p", p},
        {"n", n},
        {"K", precision},
        {"event", "|coker(P_j(A))| = p^(d_j k_j) for each j"},
        {"constraints", cons},
        {"samples", samples},
        {"seed", seed},
        {"per_tuple", per_tuple},
        {"tuple_average", tuple_average()},
        {"empirical", sim},
        {"ci99", kZ99 * std::sqrt(sim * (1 - sim) / static_cast<double>(samples))},
        {"poisson_target", poisson_json(poisson_target)},
        {"saturated_fraction", static_cast<double>(saturated) / static_cast<double>(samples)}};
    out["exact"] = exact ? nlohmann::json(fraction_string(*exact)) : nlohmann::json(nullptr);
    return out.dump();
}

std::string ConjectureReport::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "tuple,hits,empirical\n";
    for (const auto& t : tuples) {
        std::string name;
        for (const auto& poly : t.tuple) {
            if (!name.empty())
                name += "|";
            for (std::size_t i = 0; i < poly.coeffs().size(); ++i)
                name += (i ? " " : "") + std::to_string(poly.coeffs()[i]);
        }
        out << name << "," << t.hits << ","
            << static_cast<double>(t.hits) / static_cast<double>(samples) << "\n";
    }
    out << "simultaneous," << simultaneous_hits << "," << simultaneous() << "\n";
    return out.str();
}

ConjectureReport conjecture_experiment(const SamplerConfig& config,
                                       std::span<const Constraint> constraints,
                                       std::uint64_t max_tuples) {
    validate_constraints(constraints);
    if (config.samples == 0)
        throw InvalidArgument("conjecture_experiment: samples must be >= 1");
    checked_modulus(config.p, config.precision);
    for (const auto& c : constraints)
        if (std::uint64_t{c.degree} * c.count >= config.precision)
            throw InvalidArgument("conjecture_experiment: precision K=" +
                                  std::to_string(config.precision) + " must exceed d*k=" +
                                  std::to_string(c.degree * c.count));

    const auto degrees_vec = [&] {
        std::vector<unsigned> d;
        for (const auto& c : constraints)
            d.push_back(c.degree);
        return d;
    }();
    const auto irreducibles = irreducibles_by_degree(config.p, degrees_vec, config.irreducible_budget);

    std::uint64_t tuple_count = 1;
    for (const auto& group : irreducibles)
        tuple_count = group.empty() ? 0 : std::min<std::uint64_t>(tuple_count * group.size(), max_tuples + 1);
    if (tuple_count > max_tuples)
        throw BudgetExceeded("conjecture_experiment: too many irreducible tuples");

    // tuple t <-> mixed-radix digits over the groups, first group slowest
    auto tuple_index = [&](std::uint64_t t, std::size_t j) {
        std::uint64_t stride = 1;
        for (std::size_t g = irreducibles.size(); g-- > j + 1;)
            stride *= irreducibles[g].size();
        return (t / stride) % irreducibles[j].size();
    };

    const unsigned workers = std::max(1u, config.threads);
    std::vector<std::vector<std::uint64_t>> tuple_hits(workers, std::vector<std::uint64_t>(tuple_count, 0));
    std::vector<std::uint64_t> simultaneous(workers, 0), saturated(workers, 0);
    detail::parallel_shards(config.samples, workers, [&](unsigned shard, std::uint64_t begin,
                                                         std::uint64_t end) {
        std::vector<std::vector<char>> match(irreducibles.size());
        for (std::uint64_t s = begin; s < end; ++s) {
            const PadicMatrix a = sample_matrix(config.p, config.precision, config.n, config.seed, s);
            bool all = true, any_saturated = false;
            for (std::size_t j = 0; j < irreducibles.size(); ++j) {
                match[j].assign(irreducibles[j].size(), 0);
                const unsigned target = constraints[j].degree * constraints[j].count;
                for (std::size_t i = 0; i < irreducibles[j].size(); ++i) {
                    const CokernelProfile prof = smith_valuations(evaluate_lift(irreducibles[j][i], a));
                    // a saturated profile has size >= p^K > p^target
                    match[j][i] = prof.exact && prof.total_valuation() == target;
                    any_saturated = any_saturated || !prof.exact;
                    all = all && match[j][i];
                }
            }
            for (std::uint64_t t = 0; t < tuple_count; ++t) {
                bool ok = true;
                for (std::size_t j = 0; j < irreducibles.size() && ok; ++j)
                    ok = match[j][tuple_index(t, j)];
                tuple_hits[shard][t] += ok;
            }
            simultaneous[shard] += all;
            saturated[shard] += any_saturated;
        }
    });

    ConjectureReport report;
    report.p = config.p;
    report.n = config.n;
    report.precision = config.precision;
    report.constraints.assign(constraints.begin(), constraints.end());
    report.samples = config.samples;
    report.seed = config.seed;
    for (std::uint64_t t = 0; t < tuple_count; ++t) {
        TupleFrequency tf;
        for (std::size_t j = 0; j < irreducibles.size(); ++j)
            tf.tuple.push_back(irreducibles[j][tuple_index(t, j)]);
        tf.hits = 0;
        for (unsigned w = 0; w < workers; ++w)
            tf.hits += tuple_hits[w][t];
        report.tuples.push_back(std::move(tf));
    }
    report.simultaneous_hits = std::accumulate(simultaneous.begin(), simultaneous.end(), std::uint64_t{0});
    report.saturated = std::accumulate(saturated.begin(), saturated.end(), std::uint64_t{0});
    if (std::all_of(constraints.begin(), constraints.end(), [](const Constraint& c) { return c.count == 0; }))
        report.exact = coker_zero_prob_exact(config.p, config.n, degrees_vec);
    report.poisson_target = poisson_limit(constraints);
    return report;
}

std::string PadicTable::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows)
        rows_json.push_back({{"n", r.n},
                             {"p", r.p},
                             {"exact", fraction_string(r.exact)},
                             {"float", r.exact.get_d()},
                             {"sym_target", fraction_string(r.sym_target)},
                             {"sym_target_float", r.sym_target.get_d()},
                             {"gap", fraction_string(r.gap)},
                             {"gap_float", r.gap.get_d()}});
    return nlohmann::json{{"degrees", degrees},
                          {"rows", rows_json},
                          {"poisson_target", poisson_json(poisson_target)}}
        .dump();
}

std::string PadicTable::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "n,p,exact,float,sym_target,gap\n";
    for (const auto& r : rows)
        out << r.n << "," << r.p << "," << fraction_string(r.exact) << "," << r.exact.get_d() << ","
            << r.sym_target.get_d() << "," << r.gap.get_d() << "\n";
    return out.str();
}

PadicTable padic_table_report(std::span<const unsigned> degrees, std::span<const unsigned> ns,
                                std::span<const std::uint32_t> ps, unsigned threads) {
    if (degrees.empty() || ns.empty() || ps.empty())
        throw InvalidArgument("padic_table_report: ranges must be nonempty");
    std::vector<Constraint> zeros;
    for (unsigned d : degrees)
        zeros.push_back({d, 0});
    validate_constraints(zeros);
    for (auto p : ps)
        if (!is_prime(p))
            throw InvalidArgument("padic_table_report: p must be prime");

    PadicTable table;
    table.degrees.assign(degrees.begin(), degrees.end());
    table.poisson_target = poisson_limit(zeros);
    table.rows.resize(ns.size() * ps.size());
    detail::parallel_shards(table.rows.size(), threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const unsigned n = ns[i / ps.size()];
            const std::uint32_t p = ps[i % ps.size()];
            PadicRow row{n, p, coker_zero_prob_exact(p, n, degrees), sym_joint_prob(n, zeros), 0};
            row.gap = abs(row.exact - row.sym_target);
            table.rows[i] = std::move(row);
        }
    });
    return table;
}

} // namespace fqc
