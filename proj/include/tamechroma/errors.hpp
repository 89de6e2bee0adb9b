#ifndef TAMECHROMA_ERRORS_HPP
#define TAMECHROMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tamechroma {

// Precondition or argument violation. The CLI maps this to exit code 1.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative method failed to converge; carries the last residual.
struct no_convergence : std::runtime_error {
    double residual;
    no_convergence(const std::string& msg, double res)
        : std::runtime_error(msg + " (residual " + std::to_string(res) + ")"), residual(res) {}
};

// A certified computation could not establish its claim. Exit code 2.
struct certification_error : std::runtime_error {
    explicit certification_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A search or enumeration exhausted its budget. Exit code 3.
struct budget_exhausted : std::runtime_error {
    explicit budget_exhausted(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tamechroma

#endif
