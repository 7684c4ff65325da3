#ifndef HALFCERT_ERRORS_HPP
#define HALFCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace halfcert {

// Thrown when an operation would exceed a configured size cap or cost guard
// (closure cap, power materialization cap, exhaustive sweeps on oversized
// inputs). CLI maps this to exit code 3.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when an internal contract that the math guarantees is violated at
// runtime. Always a bug, never a data error.
class InternalContractError : public std::logic_error {
public:
    explicit InternalContractError(const std::string& what)
        : std::logic_error(what) {}
};

} // namespace halfcert

#endif
