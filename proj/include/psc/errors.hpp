#ifndef PSC_ERRORS_HPP
#define PSC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace psc {

// Thrown when an operation would exceed a configured work cap (enumeration
// dimension, factorization size, ...). Distinct from std::invalid_argument so
// callers can map it to a dedicated exit code.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psc

#endif
