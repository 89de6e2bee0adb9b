#ifndef TAMECHROMA_ISET_STATS_HPP
#define TAMECHROMA_ISET_STATS_HPP

#include <cstdint>

#include "tamechroma/errors.hpp"
#include "tamechroma/logreal.hpp"

namespace tamechroma {

// Parameters of the random graph models G(n,p) and G(n,m).
struct GraphParams {
    double n = 0;  // vertex count
    double p = 0.5;
    double q = 0.5;  // 1 - p
    double b = 2.0;  // 1/q
    double N = 0;    // C(n,2); exact in double for n < 9.4e7
    double m = 0;    // edge count, defaults to floor(p*N)

    static GraphParams gnp(double n, double p);
    static GraphParams gnm(double n, double m, double p_hint = -1.0);
};

// Expected number of independent t-sets, C(n,t) q^C(t,2).
LogReal mu(const GraphParams& params, double t);

// alpha0 = 2 log_b n - 2 log_b log_b n + 2 log_b(e/2) + 1, and its floor.
double alpha0(const GraphParams& params);
long alpha(const GraphParams& params);

// theta defined by mu_alpha = n^theta, from the exact mu_alpha.
double theta(const GraphParams& params);

struct MuRatio {
    LogReal ratio;          // mu_u / mu_a, exact ratio of mu evaluations
    double log_predictor;   // (a-u) * ln( n b^{-(a-u)/2} / ln n ), the Theta(.)-free predictor
    double band_factor;     // exp(|log ratio - log predictor|), for band diagnostics
};

// Ratio mu_u/mu_a together with the first-order predictor. Requires
// 0.1*alpha <= u <= 10*alpha.
MuRatio mu_ratio(const GraphParams& params, long a, long u);

// Probability that a fixed set of x potential edges is avoided by G(n,m):
// exact mode C(N-x,m)/C(N,m); asymptotic mode q^x exp(-(b-1)x^2/n^2).
// Exact mode returns zero when x > N - m.
LogReal gnm_exclusion_ratio(const GraphParams& params, double x, bool exact);

} // namespace tamechroma

#endif
