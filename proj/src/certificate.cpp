#include "halfcert/certificate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfcert/errors.hpp"
#include "stable_sum.hpp"

namespace halfcert {

CertificateReport verify_certificate(const Family& family, const Family& witness) {
    if (family.ground_size() != witness.ground_size())
        throw std::invalid_argument("family and witness ground sizes differ");
    if (family.empty())
        throw std::invalid_argument("certificate check needs a nonempty family");

    CertificateReport report;
    report.family_size = family.size();
    report.witness_size = witness.size();
    if (witness.size() <= 1) {
        report.pass = false;
        report.fail_reason = "witness too small (|G| > 1 required)";
        return report;
    }

    BigInt product = 1;
    std::vector<double> log_terms;
    log_terms.reserve(family.size());
    for (const SetMask& member : family.sets()) {
        std::size_t size = shift_size(witness, member);
        product *= BigInt(size);
        log_terms.push_back(std::log2(static_cast<double>(size)));
    }

    report.inequality_evaluated = true;
    report.exact_lhs = product * product;
    report.exact_rhs = big_pow(BigInt(witness.size()),
                               static_cast<std::uint64_t>(family.size()));
    report.lhs_bits = detail::stable_sum(std::move(log_terms));
    report.rhs_bits = static_cast<double>(family.size()) *
                      std::log2(static_cast<double>(witness.size())) / 2.0;
    report.margin_bits = report.rhs_bits - report.lhs_bits;
    report.pass = report.exact_lhs <= report.exact_rhs;
    if (!report.pass) report.fail_reason = "certificate inequality violated";
    return report;
}

Family certificate_from_abundant(const Family& family, int element) {
    if (family.empty())
        throw std::invalid_argument("abundant certificate needs a nonempty family");
    FrequencyTable table = frequencies(family);
    if (element < 1 || element > family.ground_size())
        throw std::invalid_argument("element outside ground set");
    if (2 * table.absent_count[static_cast<std::size_t>(element - 1)] >
        table.family_size)
        throw std::invalid_argument("element " + std::to_string(element) +
                                    " is not abundant");
    const int n = family.ground_size();
    return Family::from_masks(n, {SetMask(n), SetMask::from_elements(n, {element})});
}

ExtractionResult extract_abundant(const Family& family, const Family& witness,
                                  double positivity) {
    CertificateReport report = verify_certificate(family, witness);
    if (!report.pass)
        throw std::invalid_argument("certificate does not pass: " +
                                    report.fail_reason);

    ExtractionResult result;
    result.decomposition = decompose(SetDistribution::uniform_on(witness));
    FrequencyTable table = frequencies(family);

    int best = 0;
    std::size_t best_absent = std::numeric_limits<std::size_t>::max();
    for (int i = 1; i <= family.ground_size(); ++i) {
        if (result.decomposition.x[static_cast<std::size_t>(i - 1)] <= positivity)
            continue;
        std::size_t absent = table.absent_count[static_cast<std::size_t>(i - 1)];
        if (absent < best_absent) {
            best = i;
            best_absent = absent;
        }
    }
    if (best == 0)
        throw InternalContractError(
            "no element clears the positivity threshold despite |G| > 1");
    if (2 * best_absent > table.family_size)
        throw InternalContractError(
            "extracted element " + std::to_string(best) + " is not abundant");
    result.element = best;
    result.absent_count = best_absent;
    return result;
}

CertificateReport corollary_check(const Family& family, const Family& witness) {
    CertificateReport report = verify_certificate(family, witness);
    report.witness_subfamily = witness.subfamily_of(family);
    report.family_union_closed = is_union_closed(family);
    if (!*report.witness_subfamily) {
        report.pass = false;
        report.fail_reason = "not a subfamily";
    } else if (!*report.family_union_closed) {
        report.pass = false;
        report.fail_reason = "family is not union-closed";
    }
    return report;
}

} // namespace halfcert
