#include "fqcycles/partitions.hpp"

#include <algorithm>

namespace fqc {

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0)
            throw InvalidArgument("partition parts must be positive");
        if (i && parts_[i] > parts_[i - 1])
            throw InvalidArgument("partition parts must be weakly decreasing");
        size_ += parts_[i];
    }
    mult_.assign(largest() + 1, 0);
    for (unsigned part : parts_)
        ++mult_[part];
}

std::uint64_t Partition::weighted_index() const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        out += i * parts_[i];
    return out;
}

namespace {

// Reverse-lex successor in place. Returns false after 1^n.
bool next_partition(std::vector<unsigned>& a) {
    // drop trailing ones, remembering how much mass to redistribute
    unsigned spill = 0;
    while (!a.empty() && a.back() == 1) {
        a.pop_back();
        ++spill;
    }
    if (a.empty())
        return false;
    const unsigned part = --a.back();
    ++spill;
    while (spill >= part) {
        a.push_back(part);
        spill -= part;
    }
    if (spill)
        a.push_back(spill);
    return true;
}

} // namespace

void for_each_partition(unsigned n, const std::function<void(const Partition&)>& fn) {
    if (n == 0) {
        fn(Partition{});
        return;
    }
    std::vector<unsigned> a{n};
    do {
        fn(Partition(a));
    } while (next_partition(a));
}

std::vector<Partition> enumerate_partitions(unsigned n) {
    std::vector<Partition> out;
    for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

std::vector<Partition> enumerate_partitions(unsigned n, unsigned max_part) {
    std::vector<Partition> out;
    for_each_partition(n, [&](const Partition& p) {
        if (p.largest() <= max_part)
            out.push_back(p);
    });
    return out;
}

Partition conjugate(const Partition& lambda) {
    std::vector<unsigned> cols(lambda.largest(), 0);
    for (unsigned part : lambda.parts())
        for (unsigned j = 0; j < part; ++j)
            ++cols[j];
    return Partition(std::move(cols));
}

BigInt macdonald_aut(const BigInt& q, const Partition& lambda) {
    if (q < 2)
        throw InvalidArgument("macdonald_aut: q must be >= 2");
    BigRational value = ipow(q, lambda.size() + 2 * lambda.weighted_index());
    const BigRational qinv = BigRational(1) / BigRational(q);
    for (unsigned d = 1; d <= lambda.largest(); ++d)
        for (unsigned i = 1; i <= lambda.multiplicity(d); ++i)
            value *= 1 - rpow(qinv, i);
    value.canonicalize();
    if (value.get_den() != 1 || value <= 0)
        throw IdentityFailure("macdonald_aut: value is not a positive integer");
    return value.get_num();
}

namespace {

// Row-reduced basis over F_q (q prime); insert returns false when dependent.
class EchelonBasis {
  public:
    EchelonBasis(std::uint32_t q, std::size_t dim) : q_(q), dim_(dim) {}

    bool insert(std::vector<std::uint32_t> v) {
        for (const auto& [pivot, row] : rows_) {
            const std::uint32_t c = v[pivot];
            if (c == 0)
                continue;
            for (std::size_t j = 0; j < dim_; ++j)
                v[j] = static_cast<std::uint32_t>((v[j] + std::uint64_t{q_ - c} * row[j]) % q_);
        }
        std::size_t pivot = 0;
        while (pivot < dim_ && v[pivot] == 0)
            ++pivot;
        if (pivot == dim_)
            return false;
        const std::uint32_t inv = inverse(v[pivot]);
        for (auto& x : v)
            x = static_cast<std::uint32_t>(std::uint64_t{x} * inv % q_);
        for (auto& [p, row] : rows_) {
            const std::uint32_t c = row[pivot];
            if (c == 0)
                continue;
            for (std::size_t j = 0; j < dim_; ++j)
                row[j] = static_cast<std::uint32_t>((row[j] + std::uint64_t{q_ - c} * v[j]) % q_);
        }
        rows_.emplace_back(pivot, std::move(v));
        return true;
    }

  private:
    std::uint32_t inverse(std::uint32_t a) const {
        std::uint64_t out = 1, base = a, k = q_ - 2;
        while (k) {
            if (k & 1)
                out = out * base % q_;
            base = base * base % q_;
            k >>= 1;
        }
        return static_cast<std::uint32_t>(out);
    }

    std::uint32_t q_;
    std::size_t dim_;
    std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> rows_;
};

} // namespace

BigInt aut_brute_force(std::uint32_t q, const Partition& lambda, std::uint64_t max_module_size) {
    if (!is_prime(q))
        throw InvalidArgument("aut_brute_force: q must be prime");
    const unsigned dim = lambda.size();
    const std::uint64_t module_size = saturating_pow(q, dim);
    if (module_size > max_module_size)
        throw BudgetExceeded("aut_brute_force: module size " + std::to_string(module_size) +
                             " exceeds budget " + std::to_string(max_module_size));

    // Coordinates: block b occupies [offset[b], offset[b] + lambda_b), holding
    // the coefficients of 1, t, t^2, ... in F_q[t]/(t^{lambda_b}).
    const auto& parts = lambda.parts();
    std::vector<unsigned> offset(parts.size() + 1, 0);
    for (std::size_t b = 0; b < parts.size(); ++b)
        offset[b + 1] = offset[b] + parts[b];

    auto times_t = [&](const std::vector<std::uint32_t>& v) {
        std::vector<std::uint32_t> out(dim, 0);
        for (std::size_t b = 0; b < parts.size(); ++b)
            for (unsigned j = 0; j + 1 < parts[b]; ++j)
                out[offset[b] + j + 1] = v[offset[b] + j];
        return out;
    };
    auto is_zero = [](const std::vector<std::uint32_t>& v) {
        return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
    };

    BigInt total = 1;
    std::vector<std::uint32_t> v(dim);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const unsigned order = parts[i];
        EchelonBasis earlier(q, dim);
        for (std::size_t b = 0; b < i; ++b)
            for (unsigned j = 0; j < parts[b]; ++j) {
                std::vector<std::uint32_t> unit(dim, 0);
                unit[offset[b] + j] = 1;
                earlier.insert(std::move(unit));
            }
        std::uint64_t valid = 0;
        for (std::uint64_t code = 0; code < module_size; ++code) {
            std::uint64_t rest = code;
            for (auto& x : v) {
                x = static_cast<std::uint32_t>(rest % q);
                rest /= q;
            }
            // the cyclic submodule R v as the span of v, t v, ..., t^{order-1} v
            std::vector<std::vector<std::uint32_t>> orbit{v};
            for (unsigned j = 1; j <= order; ++j)
                orbit.push_back(times_t(orbit.back()));
            if (!is_zero(orbit[order]))
                continue;
            EchelonBasis basis = earlier;
            bool independent = true;
            for (unsigned j = 0; j < order && independent; ++j)
                independent = basis.insert(orbit[j]);
            if (independent)
                ++valid;
        }
        total *= BigInt(static_cast<unsigned long>(valid));
    }
    return total;
}

std::optional<SeriesMismatch> bounded_partition_identity_check(unsigned n, unsigned max_degree) {
    for (unsigned m = 0; m <= max_degree; ++m) {
        BigInt few_parts = 0, small_parts = 0;
        for_each_partition(m, [&](const Partition& p) {
            if (p.length() <= n)
                ++few_parts;
            if (p.largest() <= n)
                ++small_parts;
        });
        if (few_parts != small_parts)
            return SeriesMismatch{m, few_parts, small_parts};
    }
    return std::nullopt;
}

} // namespace fqc
