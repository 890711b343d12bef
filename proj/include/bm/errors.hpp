#ifndef BM_ERRORS_HPP
#define BM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bm {

// Invalid input: divergent index, bad order, malformed text.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric routine could not certify the requested accuracy.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bm

#endif
