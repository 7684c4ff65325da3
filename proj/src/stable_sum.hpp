#ifndef HALFCERT_STABLE_SUM_HPP
#define HALFCERT_STABLE_SUM_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace halfcert::detail {

// Neumaier-compensated sum over magnitude-sorted terms. Keeps entropy sums
// honest near the largest supported ground sizes.
inline double stable_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::abs(a) < std::abs(b); });
    double sum = 0.0;
    double compensation = 0.0;
    for (double t : terms) {
        double next = sum + t;
        if (std::abs(sum) >= std::abs(t))
            compensation += (sum - next) + t;
        else
            compensation += (t - next) + sum;
        sum = next;
    }
    return sum + compensation;
}

} // namespace halfcert::detail

#endif
