#ifndef FQCYCLES_H
#define FQCYCLES_H

#include <stddef.h>
#include <stdint.h>

#if defined(FQC_BUILDING)
#define FQC_API __attribute__((visibility("default")))
#else
#define FQC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fqc_status {
    FQC_OK = 0,
    FQC_INVALID_ARGUMENT = 1,
    FQC_BUDGET_EXCEEDED = 2,
    FQC_IDENTITY_FAILURE = 3,
    FQC_INTERNAL_ERROR = 4
} fqc_status;

typedef enum fqc_format { FQC_FORMAT_JSON = 0, FQC_FORMAT_CSV = 1, FQC_FORMAT_TEXT = 2 } fqc_format;

typedef enum fqc_method {
    FQC_METHOD_FORMULA = 0, /* cycle index */
    FQC_METHOD_BRUTE = 1,   /* exhaustive enumeration */
    FQC_METHOD_BOTH = 2     /* both, compared exactly */
} fqc_method;

/* Exactly `count` irreducible factors (or cycles) of degree `degree`. */
typedef struct fqc_constraint {
    unsigned degree;
    unsigned count;
} fqc_constraint;

typedef struct fqc_sampler {
    uint32_t p;
    unsigned n;
    unsigned precision;
    uint64_t samples;
    uint64_t seed;
} fqc_sampler;

typedef struct fqc_verify_options {
    const char* const* only; /* check ids; NULL or empty for all */
    size_t only_count;
    const uint64_t* qs; /* NULL for the default 2, 3, 4 */
    size_t qs_count;
    unsigned nmax;    /* 0 for the default 8 */
    uint64_t samples; /* 0 for the default 100000 */
    uint64_t seed;
    const char* fault; /* NULL, "mac", "nilpotent" or "squarefree" */
} fqc_verify_options;

typedef struct fqc_context fqc_context;
typedef struct fqc_report fqc_report;

FQC_API const char* fqc_version(void);
FQC_API const char* fqc_status_name(fqc_status status);

FQC_API fqc_status fqc_context_create(fqc_context** out);
FQC_API void fqc_context_destroy(fqc_context* ctx);
/* Cap on q^(n^2) or n! states in exhaustive enumerations. */
FQC_API fqc_status fqc_context_set_max_states(fqc_context* ctx, uint64_t max_states);
/* Cap on q^d when listing irreducible polynomials. */
FQC_API fqc_status fqc_context_set_irreducible_budget(fqc_context* ctx, uint64_t budget);
FQC_API fqc_status fqc_context_set_threads(fqc_context* ctx, unsigned threads);
/* Message for the last non-OK status on this context; never NULL. */
FQC_API const char* fqc_context_last_error(const fqc_context* ctx);

/* Serialized report, owned by the report. NULL if the format is unavailable. */
FQC_API const char* fqc_report_string(const fqc_report* report, fqc_format format);
/* 1 if every assertion in the report held, 0 if one failed, -1 if none apply. */
FQC_API int fqc_report_passed(const fqc_report* report);
FQC_API void fqc_report_destroy(fqc_report* report);

/* Prob over Mat_n(F_q) that the characteristic polynomial meets every constraint. */
FQC_API fqc_status fqc_joint(fqc_context* ctx, unsigned n, uint64_t q, const fqc_constraint* constraints,
                             size_t count, fqc_method method, fqc_report** out);
/* Prob over S_n that the cycle counts meet every constraint. */
FQC_API fqc_status fqc_perm(fqc_context* ctx, unsigned n, const fqc_constraint* constraints, size_t count,
                            fqc_method method, fqc_report** out);
/* Matrix probabilities over increasing prime powers qs against the S_n value. */
FQC_API fqc_status fqc_limit_q(fqc_context* ctx, unsigned n, const fqc_constraint* constraints, size_t count,
                               const uint64_t* qs, size_t qs_count, fqc_report** out);
/* Coefficients u^0..u^order of the closed-form generating function. */
FQC_API fqc_status fqc_shepp_lloyd(fqc_context* ctx, const unsigned* zero_degrees, size_t zero_count,
                                   const fqc_constraint* hits, size_t hit_count, unsigned order,
                                   fqc_report** out);
/* Normalized probability of exactly k cycles, one row per n. */
FQC_API fqc_status fqc_jordan_landau(fqc_context* ctx, unsigned k, const uint64_t* ns, size_t ns_count,
                                     fqc_report** out);
FQC_API fqc_status fqc_cokernel(fqc_context* ctx, const fqc_sampler* sampler, const unsigned* degrees,
                                size_t degree_count, fqc_report** out);
FQC_API fqc_status fqc_conjecture(fqc_context* ctx, const fqc_sampler* sampler,
                                  const fqc_constraint* constraints, size_t count, fqc_report** out);
FQC_API fqc_status fqc_padic_table(fqc_context* ctx, const unsigned* degrees, size_t degree_count,
                                   const unsigned* ns, size_t ns_count, const uint32_t* ps, size_t ps_count,
                                   fqc_report** out);
FQC_API fqc_status fqc_verify(fqc_context* ctx, const fqc_verify_options* options, fqc_report** out);

/* Monic polynomials: coefficients constant term first, field elements as integers below q. */
FQC_API fqc_status fqc_irreducibles(fqc_context* ctx, uint64_t q, unsigned degree, fqc_report** out);
FQC_API fqc_status fqc_factor_profile(fqc_context* ctx, uint64_t q, const uint32_t* coeffs, size_t count,
                                      fqc_report** out);
/* Row-major n x n matrix over F_q. */
FQC_API fqc_status fqc_char_poly(fqc_context* ctx, uint64_t q, unsigned n, const uint32_t* entries,
                                 fqc_report** out);

#ifdef __cplusplus
}
#endif

#endif
