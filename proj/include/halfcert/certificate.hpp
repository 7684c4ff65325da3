#ifndef HALFCERT_CERTIFICATE_HPP
#define HALFCERT_CERTIFICATE_HPP

#include <optional>
#include <string>

#include "halfcert/bigint.hpp"
#include "halfcert/entropy.hpp"
#include "halfcert/family.hpp"

namespace halfcert {

// Outcome of checking sum_{S in F} log2|G(S)| <= |F| log2|G| / 2 for a
// witness family G against F. The authoritative verdict is the exact integer
// comparison (prod |G(S)|)^2 <= |G|^|F|; the floating-point margin is
// advisory. A witness with |G| <= 1 fails without evaluating the inequality.
struct CertificateReport {
    bool pass = false;
    std::string fail_reason; // empty on pass

    std::size_t family_size = 0;
    std::size_t witness_size = 0;

    bool inequality_evaluated = false;
    double lhs_bits = 0.0;    // sum_S log2 |G(S)|
    double rhs_bits = 0.0;    // |F| log2 |G| / 2
    double margin_bits = 0.0; // rhs - lhs; nonnegative exactly when passing
    BigInt exact_lhs;         // (prod_S |G(S)|)^2
    BigInt exact_rhs;         // |G|^|F|

    // Only recorded by corollary_check.
    std::optional<bool> witness_subfamily;
    std::optional<bool> family_union_closed;
};

// Element recovered from a passing certificate, with the decomposition of
// X_G that produced it.
struct ExtractionResult {
    int element = 0;
    std::size_t absent_count = 0; // w_F(element)
    DecompositionVector decomposition;
};

// Requires |F| >= 1 and matching ground sizes. Never throws on a mere
// failing witness; failure lands in the report.
CertificateReport verify_certificate(const Family& family, const Family& witness);

// The two-set witness {∅, {i}} for an abundant element i. Throws when i is
// not abundant. verify_certificate always passes on the result, with
// lhs_bits equal to w_F(i).
Family certificate_from_abundant(const Family& family, int element);

// Recovers an abundant element from a passing certificate: decomposes the
// uniform distribution on the witness (default order) and, among elements
// whose share clears the positivity threshold, returns the one with the
// fewest absences, ties to the smallest index.
ExtractionResult extract_abundant(const Family& family, const Family& witness,
                                  double positivity = 1e-9);

// verify_certificate plus the subfamily and union-closedness predicates; the
// verdict requires all three.
CertificateReport corollary_check(const Family& family, const Family& witness);

} // namespace halfcert

#endif
