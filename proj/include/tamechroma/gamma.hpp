#ifndef TAMECHROMA_GAMMA_HPP
#define TAMECHROMA_GAMMA_HPP

#include <cmath>

#include "tamechroma/errors.hpp"

namespace tamechroma {

inline double log_factorial(double n) {
    if (n < 0) throw domain_error("log_factorial: negative argument");
    return std::lgamma(n + 1.0);
}

// ln C(n, k) via log-gamma; n, k are nonneg-integer-like reals. A direct
// log-sum route handles small k, where the lgamma difference cancels
// catastrophically for huge n (n up to 1e12 stays below 1e-9 absolute).
inline double log_binomial(double n, double k) {
    if (k < 0 || k > n) throw domain_error("log_binomial: require 0 <= k <= n");
    double kk = std::min(k, n - k);
    if (kk == std::floor(kk) && kk <= 256.0) {
        double s = 0.0;
        for (double i = 1.0; i <= kk; i += 1.0) s += std::log((n - kk + i) / i);
        return s;
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// C(m, 2) for integer-like m, exact in double for m below 2^26.
inline double choose2(double m) { return 0.5 * m * (m - 1.0); }

} // namespace tamechroma

#endif
