#ifndef TAMECHROMA_OPTIMAL_PROFILE_HPP
#define TAMECHROMA_OPTIMAL_PROFILE_HPP

#include <string>
#include <utility>
#include <vector>

#include "tamechroma/iset_stats.hpp"
#include "tamechroma/logreal.hpp"
#include "tamechroma/profiles.hpp"

namespace tamechroma {

// Auxiliary function: -(ln b/2) i^2 - ln((alpha-i)!) + ln sqrt(2 pi)
//                     + (alpha - i + 1/2) ln alpha - alpha.
double h_aux(long alpha, long i, double lb);

// The expectation-maximizing continuous t-bounded profile with k colour
// classes: weights p_u = e^{x_t + u y_t} / d_u, d_u = b^{C(u,2)} u!, solved
// through the bounded reparametrized multipliers (lambda_n, mu_n).
struct ContinuousProfile {
    long long n = 0, k = 0;
    int t = 0;
    long alpha = 0;
    double rho = 0.0;   // n/k
    double q = 0.5;     // p is fixed to 1/2 unless the general-q flag is used
    double x_t = 0.0, y_t = 0.0;
    double lambda_n = 0.0, mu_n = 0.0;
    double residual = 0.0;  // max norm of the two constraint residuals

    double log_d(int u) const;    // ln d_u
    double log_p(int u) const;    // ln p_u
    double p(int u) const;        // may underflow to 0 for tiny weights
    double xi(long i) const;      // xi_i = p_{alpha-i}
};

// Solves the two constraint equations (total mass 1, mean rho) with the
// damped 2-d Newton from numeric core; initial guess translated from
// y ~ 2 ln n - ln ln n. Deterministic.
ContinuousProfile solve_continuous(long long n, long long k, int t, double q = 0.5);

struct ReparamProfile {
    long alpha = 0;
    int i_min = 0, i_max = 0;  // alpha - t .. alpha - 1
    double lambda_n = 0.0, mu_n = 0.0;
    std::vector<double> xi;  // indexed i - i_min
    std::vector<double> h;   // h_n(i), same indexing

    double xi_at(long i) const {
        return i < i_min || i > i_max ? 0.0 : xi[static_cast<std::size_t>(i - i_min)];
    }
};

ReparamProfile reparametrize(const ContinuousProfile& cp, long long n);

// L_k on arbitrary nonnegative real class counts (u, k_u):
// n ln n - n + k - sum k_u ln(k_u d_u), with 0 ln 0 := 0.
double L_value(long long n, long long k, const std::vector<std::pair<int, double>>& counts,
               double q = 0.5);

// L0(n,k,t) = k * Ltilde0(rho,k,t) at the solved maximizer (closed form).
double L0(long long n, long long k, int t, double q = 0.5);

// Integer rounding of the continuous maximizer: truncate the tiny-class
// tail at u* = alpha - ceil(C' sqrt(ln n)) with C' minimal so the tail mass
// is below 1/n^2, floor-sweep with carry, then neighbour changes to restore
// the vertex count. Output satisfies sum k_u = k and sum u k_u = n exactly.
struct RoundedProfile {
    Profile profile;
    int u_star;
    int c_prime;          // the minimal tail constant chosen
    int neighbour_changes;
    double perturbation;  // sum_u |k_u^* - xi_{alpha-u} k|
};

RoundedProfile round_to_integer(const ContinuousProfile& cp, long long n, long long k, int t);

// Exact E_{n,k,t,p}: sum of unordered expectations over all t-bounded
// k-profiles on n vertices (enumeration; n <= 60).
LogReal exact_first_moment(long long n, long long k, int t, const GraphParams& params);

// Dyadic rational P/2^s value of E_{n,k,t} at p = 1/2, exact for n <= 12.
struct DyadicE {
    unsigned __int128 num = 0;
    int shift = 0;  // value = num / 2^shift
    bool at_least_one() const {
        return num >= (static_cast<unsigned __int128>(1) << shift);
    }
};
DyadicE exact_first_moment_dyadic(long long n, long long k, int t);

struct ThresholdResult {
    long long k = 0;
    long long uncertainty = 0;     // +- colours (L0 mode)
    std::string mode;              // "exact" or "L0"
    double value_at_k = 0.0;       // ln E or L0 at k
    double value_below = 0.0;      // at k-1
};

// First-moment threshold min{k : E_{n,k,t} >= 1} (exact mode, n <= 60) or
// min{k : L0(n,k,t) >= 0} (L0 mode) with the Lemma-based +-uncertainty.
ThresholdResult threshold(long long n, int t, bool exact, const GraphParams& params);

} // namespace tamechroma

#endif
