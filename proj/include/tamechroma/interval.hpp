#ifndef TAMECHROMA_INTERVAL_HPP
#define TAMECHROMA_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>

#include "tamechroma/errors.hpp"

namespace tamechroma {

namespace detail {
inline double up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}
inline double down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
// libm exp/log are not guaranteed correctly rounded; two ulps cover them.
inline double up2(double x) { return up(up(x)); }
inline double down2(double x) { return down(down(x)); }
} // namespace detail

// Certified closed interval [lo, hi]. Every operation rounds outward (by
// ulp inflation, so the result is valid in any rounding mode), hence the
// true result set is always contained in the returned interval.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h)) throw domain_error("Interval: lo > hi");
    }

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool straddles_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool strictly_positive() const { return lo > 0.0; }
    bool strictly_negative() const { return hi < 0.0; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return {detail::down(a.lo + b.lo), detail::up(a.hi + b.hi)};
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return {detail::down(a.lo - b.hi), detail::up(a.hi - b.lo)};
    }
    friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b) {
        double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {detail::down(std::min(std::min(p1, p2), std::min(p3, p4))),
                detail::up(std::max(std::max(p1, p2), std::max(p3, p4)))};
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.straddles_zero()) throw domain_error("Interval division by interval containing 0");
        double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
        return {detail::down(std::min(std::min(p1, p2), std::min(p3, p4))),
                detail::up(std::max(std::max(p1, p2), std::max(p3, p4)))};
    }

    friend Interval operator+(const Interval& a, double b) { return a + Interval(b); }
    friend Interval operator-(const Interval& a, double b) { return a - Interval(b); }
    friend Interval operator*(const Interval& a, double b) { return a * Interval(b); }
    friend Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
};

inline Interval iexp(const Interval& a) {
    double lo = std::max(0.0, detail::down2(std::exp(a.lo)));
    return {lo, detail::up2(std::exp(a.hi))};
}

inline Interval ilog(const Interval& a) {
    if (a.lo <= 0.0) throw domain_error("Interval log of nonpositive interval");
    return {detail::down2(std::log(a.lo)), detail::up2(std::log(a.hi))};
}

// ln 2 as a certified interval
inline Interval iln2() {
    double l2 = 0x1.62e42fefa39efp-1;
    return {detail::down(l2), detail::up(l2)};
}

// Enclosure of -y ln y with 0 ln 0 := 0, for y clamped to [0, 1]. Used by
// the partial-colouring exponents where 1 - sum of zetas may come out
// slightly negative from outward rounding; such slack is clamped.
inline Interval ixlogx_neg(const Interval& y_in) {
    double lo = std::max(0.0, y_in.lo);
    double hi = std::min(1.0, std::max(lo, y_in.hi));
    if (lo > 0.0 && hi < 1.0) {
        Interval y(lo, hi);
        return -(y * ilog(y));
    }
    // endpoint at 0 or 1: -y ln y is unimodal with peak 1/e at y = 1/e
    double peak = detail::up2(std::exp(-1.0));
    double fmax;
    if (hi <= 0.0 || lo >= 1.0) return Interval(0.0);
    if (hi < 0.36787944117144233)
        fmax = (-(Interval(hi) * ilog(Interval(hi)))).hi;
    else if (lo > 0.36787944117144233)
        fmax = (-(Interval(lo) * ilog(Interval(lo)))).hi;
    else
        fmax = peak;
    return {0.0, fmax};
}

} // namespace tamechroma

#endif
