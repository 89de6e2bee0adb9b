#ifndef TAMECHROMA_LOGREAL_HPP
#define TAMECHROMA_LOGREAL_HPP

#include <cmath>
#include <cstdlib>
#include <limits>

namespace tamechroma {

// A real number stored as sign plus natural log of magnitude. Carries
// quantities like expected colouring counts that overflow doubles by
// thousands of orders of magnitude.
//
// Invariants: sign == 0 iff the value is exactly zero; log_abs finite
// whenever sign != 0.
struct LogReal {
    int sign = 0;          // -1, 0, +1
    double log_abs = 0.0;  // ln |value|; meaningless when sign == 0

    // Addition of opposite signs with log-magnitudes closer than this
    // returns exact zero instead of cancellation noise.
    static constexpr double kCancelTol = 1e-14;

    static LogReal zero() { return {}; }
    static LogReal one() { return {1, 0.0}; }

    static LogReal from_log(double log_value, int s = 1) {
        if (s == 0) return zero();
        return {s > 0 ? 1 : -1, log_value};
    }

    static LogReal from_double(double x) {
        if (x == 0.0) return zero();
        return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
    }

    bool is_zero() const { return sign == 0; }

    double to_double() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_abs);
    }

    LogReal operator-() const { return {-sign, log_abs}; }

    friend LogReal operator*(const LogReal& a, const LogReal& b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.sign * b.sign, a.log_abs + b.log_abs};
    }

    friend LogReal operator/(const LogReal& a, const LogReal& b) {
        if (b.sign == 0) return {0, std::numeric_limits<double>::quiet_NaN()};
        if (a.sign == 0) return zero();
        return {a.sign * b.sign, a.log_abs - b.log_abs};
    }

    friend LogReal operator+(const LogReal& a, const LogReal& b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        const LogReal& big = a.log_abs >= b.log_abs ? a : b;
        const LogReal& small = a.log_abs >= b.log_abs ? b : a;
        double d = small.log_abs - big.log_abs;  // <= 0
        if (a.sign == b.sign)
            return {a.sign, big.log_abs + std::log1p(std::exp(d))};
        if (big.log_abs - small.log_abs < kCancelTol) return zero();
        return {big.sign, big.log_abs + std::log1p(-std::exp(d))};
    }

    friend LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

    LogReal pow(double e) const {
        if (sign == 0) return zero();
        if (sign < 0 && e != std::floor(e)) return {0, std::numeric_limits<double>::quiet_NaN()};
        int s = sign < 0 && std::fmod(e, 2.0) != 0.0 ? -1 : 1;
        return {s, log_abs * e};
    }

    // total order by actual value
    friend bool operator<(const LogReal& a, const LogReal& b) {
        if (a.sign != b.sign) return a.sign < b.sign;
        if (a.sign == 0) return false;
        return a.sign > 0 ? a.log_abs < b.log_abs : a.log_abs > b.log_abs;
    }
    friend bool operator>(const LogReal& a, const LogReal& b) { return b < a; }
    friend bool operator<=(const LogReal& a, const LogReal& b) { return !(b < a); }
    friend bool operator>=(const LogReal& a, const LogReal& b) { return !(a < b); }
};

} // namespace tamechroma

#endif
