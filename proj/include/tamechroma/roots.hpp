#ifndef TAMECHROMA_ROOTS_HPP
#define TAMECHROMA_ROOTS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "tamechroma/errors.hpp"

namespace tamechroma {

struct BisectResult {
    double root;      // midpoint of the final bracket
    double lo, hi;    // final bracket; f changes sign across it
    double f_root;
};

// Deterministic bisection. Requires a sign change on [lo, hi].
inline BisectResult bisect(const std::function<double(double)>& f, double lo, double hi,
                           double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return {lo, lo, lo, 0.0};
    if (fhi == 0.0) return {hi, hi, hi, 0.0};
    if ((flo < 0) == (fhi < 0))
        throw domain_error("bisect: no sign change on the given bracket");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at double resolution
        double fm = f(mid);
        if (fm == 0.0) return {mid, mid, mid, 0.0};
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double root = 0.5 * (lo + hi);
    return {root, lo, hi, f(root)};
}

using Vec2 = std::array<double, 2>;
using Jac2 = std::array<double, 4>;  // row-major [dF0/dx dF0/dy; dF1/dx dF1/dy]

struct Newton2Result {
    Vec2 x;
    double residual;  // max-norm of F at x
    int iterations;
};

// Damped two-dimensional Newton with analytic Jacobian. A full step that
// increases the max-norm residual is halved, at most max_halvings times.
inline Newton2Result newton2(const std::function<Vec2(Vec2)>& F,
                             const std::function<Jac2(Vec2)>& J, Vec2 start, double tol,
                             int max_iter = 100, int max_halvings = 40) {
    auto norm = [](const Vec2& v) { return std::max(std::fabs(v[0]), std::fabs(v[1])); };
    Vec2 x = start;
    Vec2 fx = F(x);
    double r = norm(fx);
    for (int it = 0; it < max_iter; ++it) {
        if (r <= tol) return {x, r, it};
        Jac2 j = J(x);
        double det = j[0] * j[3] - j[1] * j[2];
        if (det == 0.0 || !std::isfinite(det))
            throw no_convergence("newton2: singular Jacobian", r);
        Vec2 step = {(j[3] * fx[0] - j[1] * fx[1]) / det,
                     (-j[2] * fx[0] + j[0] * fx[1]) / det};
        double damp = 1.0;
        for (int h = 0; h <= max_halvings; ++h) {
            Vec2 cand = {x[0] - damp * step[0], x[1] - damp * step[1]};
            Vec2 fc = F(cand);
            double rc = norm(fc);
            if (std::isfinite(rc) && (rc < r || rc <= tol)) {
                x = cand;
                fx = fc;
                r = rc;
                break;
            }
            if (h == max_halvings) throw no_convergence("newton2: damping stalled", r);
            damp *= 0.5;
        }
    }
    if (r <= tol) return {x, r, max_iter};
    throw no_convergence("newton2: max iterations reached", r);
}

} // namespace tamechroma

#endif
