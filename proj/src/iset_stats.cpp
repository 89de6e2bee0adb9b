#include "tamechroma/iset_stats.hpp"

#include <cmath>

#include "tamechroma/errors.hpp"
#include "tamechroma/gamma.hpp"

namespace tamechroma {

GraphParams GraphParams::gnp(double n, double p) {
    if (!(p > 0.0 && p < 1.0)) throw domain_error("GraphParams: require 0 < p < 1");
    if (n < 1) throw domain_error("GraphParams: require n >= 1");
    GraphParams g;
    g.n = n;
    g.p = p;
    g.q = 1.0 - p;
    g.b = 1.0 / g.q;
    g.N = choose2(n);
    g.m = std::floor(p * g.N);
    return g;
}

GraphParams GraphParams::gnm(double n, double m, double p_hint) {
    double N = choose2(n);
    if (m < 0 || m > N) throw domain_error("GraphParams: require 0 <= m <= N");
    double p = p_hint > 0 ? p_hint : (N > 0 ? m / N : 0.5);
    if (p <= 0.0) p = 0.5;  // density hint only enters b and alpha0
    if (p >= 1.0) p = 1.0 - 1e-12;
    GraphParams g = gnp(n, p);
    g.m = m;
    return g;
}

LogReal mu(const GraphParams& params, double t) {
    if (t < 1 || t > params.n) throw domain_error("mu: require 1 <= t <= n");
    return LogReal::from_log(log_binomial(params.n, t) + choose2(t) * std::log(params.q));
}

double alpha0(const GraphParams& params) {
    if (params.n < 3) throw domain_error("alpha0: require n >= 3");
    double lb = std::log(params.b);
    double logb_n = std::log(params.n) / lb;
    if (logb_n <= 1.0) throw domain_error("alpha0: log_b log_b n undefined");
    double logb_logb_n = std::log(logb_n) / lb;
    double logb_e2 = std::log(std::exp(1.0) / 2.0) / lb;
    return 2.0 * logb_n - 2.0 * logb_logb_n + 2.0 * logb_e2 + 1.0;
}

long alpha(const GraphParams& params) { return static_cast<long>(std::floor(alpha0(params))); }

double theta(const GraphParams& params) {
    long a = alpha(params);
    return mu(params, static_cast<double>(a)).log_abs / std::log(params.n);
}

MuRatio mu_ratio(const GraphParams& params, long a, long u) {
    long al = alpha(params);
    if (u < 0.1 * al || u > 10.0 * al)
        throw domain_error("mu_ratio: require 0.1*alpha <= u <= 10*alpha");
    LogReal r = mu(params, static_cast<double>(u)) / mu(params, static_cast<double>(a));
    double d = static_cast<double>(a - u);
    double log_pred =
        d * (std::log(params.n) - std::log(std::log(params.n)) - 0.5 * d * std::log(params.b));
    return {r, log_pred, std::exp(std::fabs(r.log_abs - log_pred))};
}

LogReal gnm_exclusion_ratio(const GraphParams& params, double x, bool exact) {
    if (x < 0) throw domain_error("gnm_exclusion_ratio: require x >= 0");
    if (exact) {
        if (x > params.N - params.m) return LogReal::zero();
        return LogReal::from_log(log_binomial(params.N - x, params.m) -
                                 log_binomial(params.N, params.m));
    }
    double bm1 = params.b - 1.0;
    return LogReal::from_log(x * std::log(params.q) - bm1 * x * x / (params.n * params.n));
}

} // namespace tamechroma
