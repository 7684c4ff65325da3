#ifndef HALFCERT_BIGINT_HPP
#define HALFCERT_BIGINT_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace halfcert {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1u) result *= b;
        exp >>= 1;
        if (exp != 0) b *= b;
    }
    return result;
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

} // namespace halfcert

#endif
