#ifndef FQCYCLES_VERIFY_HPP
#define FQCYCLES_VERIFY_HPP

#include "fqcycles/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fqc {

/// Deliberate off-by-one perturbations, used to show the suite can fail.
enum class Fault { none, macdonald, nilpotent, squarefree };

Fault parse_fault(const std::string& name);

struct VerifyOptions {
    std::vector<std::string> only;            // empty runs every check
    std::vector<std::uint64_t> qs{2, 3, 4};   // fields for the "key" check
    unsigned nmax = 8;                        // top coefficient for "key" and "fac1"
    std::uint64_t samples = 100000;           // per (p, n) in "red"
    std::uint64_t seed = 42;
    unsigned threads = 1;
    EnumerationBudget budget;
    Fault fault = Fault::none;
};

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = true;
    std::string detail;  // first failing coefficient, or a summary on success
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    /// One "PASS id: ..." or "FAIL id: ..." line per check.
    std::string to_text() const;
    std::string to_json() const;
    std::string to_csv() const;
};

/// key, mac, fine-herstein, sf, sf-nonzero-constant, fac1, issue, red.
const std::vector<std::string>& verify_check_ids();

/// Throws InvalidArgument on an unknown id in `only`.
VerifyReport run_verify(const VerifyOptions& options);

} // namespace fqc

#endif
