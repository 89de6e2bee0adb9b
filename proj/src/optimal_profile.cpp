#include "tamechroma/optimal_profile.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tamechroma/constants.hpp"
#include "tamechroma/errors.hpp"
#include "tamechroma/gamma.hpp"
#include "tamechroma/roots.hpp"

namespace tamechroma {

namespace {

constexpr double kLogSqrt2Pi = 0.9189385332046727;

double f_alpha(long alpha, double lb) {
    double a = static_cast<double>(alpha);
    return -0.5 * lb * a * (a - 1.0) - kLogSqrt2Pi - (a + 0.5) * std::log(a) + a;
}

struct SumStats {
    double lse;   // ln sum_i exp(h_i + lambda + mu i)
    double mean;  // normalized first moment of i
    double var;   // normalized variance of i
};

SumStats weight_stats(const std::vector<double>& h, long i_min, double lambda, double mu) {
    double m = -1e300;
    std::size_t cnt = h.size();
    std::vector<double> e(cnt);
    for (std::size_t j = 0; j < cnt; ++j) {
        e[j] = h[j] + lambda + mu * (static_cast<double>(i_min) + j);
        m = std::max(m, e[j]);
    }
    double s0 = 0, s1 = 0, s2 = 0;
    for (std::size_t j = 0; j < cnt; ++j) {
        double i = static_cast<double>(i_min) + j;
        double w = std::exp(e[j] - m);
        s0 += w;
        s1 += i * w;
        s2 += i * i * w;
    }
    double mean = s1 / s0;
    return {m + std::log(s0), mean, s2 / s0 - mean * mean};
}

} // namespace

double h_aux(long alpha, long i, double lb) {
    if (i < 0 || i > alpha - 1) throw domain_error("h_aux: require 0 <= i <= alpha-1");
    double a = static_cast<double>(alpha);
    double ii = static_cast<double>(i);
    return -0.5 * lb * ii * ii - log_factorial(a - ii) + kLogSqrt2Pi +
           (a - ii + 0.5) * std::log(a) - a;
}

double ContinuousProfile::log_d(int u) const {
    return choose2(u) * std::log(1.0 / q) + log_factorial(u);
}

double ContinuousProfile::log_p(int u) const {
    if (u < 1 || u > t) return -1e300;
    long i = alpha - u;
    double lb = std::log(1.0 / q);
    return h_aux(alpha, i, lb) + lambda_n + mu_n * static_cast<double>(i);
}

double ContinuousProfile::p(int u) const { return std::exp(log_p(u)); }

double ContinuousProfile::xi(long i) const {
    return p(static_cast<int>(alpha - i));
}

ContinuousProfile solve_continuous(long long n, long long k, int t, double q) {
    if (n < 3 || k < 1) throw domain_error("solve_continuous: require n >= 3, k >= 1");
    double rho = static_cast<double>(n) / k;
    if (!(rho > 1.0 && rho < t))
        throw domain_error("solve_continuous: require 1 < n/k < t");
    GraphParams params = GraphParams::gnp(static_cast<double>(n), 1.0 - q);
    long al = alpha(params);
    double lb = std::log(1.0 / q);
    long i_min = al - t, i_max = al - 1;
    if (i_min < 0) throw domain_error("solve_continuous: t exceeds alpha");
    double target = static_cast<double>(al) - rho;

    std::vector<double> h(static_cast<std::size_t>(i_max - i_min + 1));
    for (long i = i_min; i <= i_max; ++i)
        h[static_cast<std::size_t>(i - i_min)] = h_aux(al, i, lb);

    auto F = [&](Vec2 v) -> Vec2 {
        SumStats s = weight_stats(h, i_min, v[0], v[1]);
        return {s.lse, s.mean - target};
    };
    auto J = [&](Vec2 v) -> Jac2 {
        SumStats s = weight_stats(h, i_min, v[0], v[1]);
        return {1.0, s.mean, 0.0, s.var};
    };

    // initial guess translated from y_t ~ 2 ln n - ln ln n, mu_n = O(1)
    double y0 = 2.0 * std::log(static_cast<double>(n)) - std::log(std::log(static_cast<double>(n)));
    double mu0 = static_cast<double>(al) * lb + std::log(static_cast<double>(al)) - 0.5 * lb - y0;
    double lam0 = -weight_stats(h, i_min, 0.0, mu0).lse;
    const double tol = default_constants().newton_tol;
    Newton2Result sol;
    try {
        sol = newton2(F, J, {lam0, mu0}, tol);
    } catch (const no_convergence&) {
        // fall back to a coarse bisection on the normalized mean, which is
        // increasing in mu
        double lo = -80.0, hi = 120.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (weight_stats(h, i_min, 0.0, mid).mean < target)
                lo = mid;
            else
                hi = mid;
        }
        double mu1 = 0.5 * (lo + hi);
        sol = newton2(F, J, {-weight_stats(h, i_min, 0.0, mu1).lse, mu1}, tol);
    }

    ContinuousProfile cp;
    cp.n = n;
    cp.k = k;
    cp.t = t;
    cp.alpha = al;
    cp.rho = rho;
    cp.q = q;
    cp.lambda_n = sol.x[0];
    cp.mu_n = sol.x[1];
    cp.y_t = static_cast<double>(al) * lb + std::log(static_cast<double>(al)) - 0.5 * lb - cp.mu_n;
    cp.x_t = cp.lambda_n - static_cast<double>(al) * cp.y_t - f_alpha(al, lb);

    // residuals of the original constraints
    double s0 = 0.0, s1 = 0.0;
    for (long i = i_min; i <= i_max; ++i) {
        double xi = std::exp(h[static_cast<std::size_t>(i - i_min)] + cp.lambda_n +
                             cp.mu_n * static_cast<double>(i));
        s0 += xi;
        s1 += static_cast<double>(i) * xi;
    }
    cp.residual = std::max(std::fabs(s0 - 1.0), std::fabs(s1 - target));
    if (cp.residual > default_constants().residual_tol)
        throw no_convergence("solve_continuous: constraint residual too large", cp.residual);
    return cp;
}

ReparamProfile reparametrize(const ContinuousProfile& cp, long long n) {
    if (cp.n != n) throw domain_error("reparametrize: n mismatch");
    ReparamProfile rp;
    rp.alpha = cp.alpha;
    rp.i_min = static_cast<int>(cp.alpha - cp.t);
    rp.i_max = static_cast<int>(cp.alpha - 1);
    double lb = std::log(1.0 / cp.q);
    // recover the multipliers from (x_t, y_t) by the displayed relations
    rp.mu_n = -cp.y_t + static_cast<double>(cp.alpha) * lb +
              std::log(static_cast<double>(cp.alpha)) - 0.5 * lb;
    rp.lambda_n = cp.x_t + static_cast<double>(cp.alpha) * cp.y_t + f_alpha(cp.alpha, lb);
    for (int i = rp.i_min; i <= rp.i_max; ++i) {
        double h = h_aux(cp.alpha, i, lb);
        rp.h.push_back(h);
        rp.xi.push_back(std::exp(h + rp.lambda_n + rp.mu_n * i));
    }
    return rp;
}

double L_value(long long n, long long k, const std::vector<std::pair<int, double>>& counts,
               double q) {
    double lb = std::log(1.0 / q);
    double nn = static_cast<double>(n);
    double s = 0.0;
    for (auto [u, c] : counts) {
        if (c < 0.0) throw domain_error("L_value: negative class count");
        if (c == 0.0) continue;
        double log_du = choose2(u) * lb + log_factorial(u);
        s += c * (std::log(c) + log_du);
    }
    return nn * std::log(nn) - nn + static_cast<double>(k) - s;
}

double L0(long long n, long long k, int t, double q) {
    ContinuousProfile cp = solve_continuous(n, k, t, q);
    double nn = static_cast<double>(n), kk = static_cast<double>(k);
    return nn * std::log(nn) - nn + kk - kk * (std::log(kk) + cp.x_t) - nn * cp.y_t;
}

RoundedProfile round_to_integer(const ContinuousProfile& cp, long long n, long long k, int t) {
    if (cp.n != n || cp.k != k || cp.t != t)
        throw domain_error("round_to_integer: profile parameters mismatch");
    long al = cp.alpha;
    double sqrt_ln = std::sqrt(std::log(static_cast<double>(n)));
    double tail_bound = 1.0 / (static_cast<double>(n) * n);

    // step 1: u* = alpha - ceil(C' sqrt(ln n)), minimal C' with small tail
    int c_prime = 1;
    int u_star = 1;
    for (;; ++c_prime) {
        long width = static_cast<long>(std::ceil(c_prime * sqrt_ln));
        u_star = static_cast<int>(std::max<long>(1, al - width));
        double tail = 0.0;
        for (int u = 1; u < u_star; ++u) tail += cp.p(u);
        if (tail < tail_bound || u_star == 1) break;
    }

    std::vector<double> ku(static_cast<std::size_t>(t) + 1, 0.0);
    for (int u = 1; u <= t; ++u) ku[u] = cp.p(u) * static_cast<double>(k);
    double moved = 0.0;
    for (int u = 1; u < u_star; ++u) {
        moved += ku[u];
        ku[u] = 0.0;
    }
    ku[u_star] += moved;

    // step 2: floor sweep, carrying fractions upward
    std::vector<long long> kk(static_cast<std::size_t>(t) + 1, 0);
    double carry = 0.0;
    long long placed = 0;
    for (int u = u_star; u < t; ++u) {
        double cur = ku[u] + carry;
        kk[u] = static_cast<long long>(std::floor(cur));
        carry = cur - static_cast<double>(kk[u]);
        placed += kk[u];
    }
    kk[t] = k - placed;  // integral by construction; avoids fp drift
    if (kk[t] < 0) throw domain_error("round_to_integer: negative final class count");
    if (std::fabs(static_cast<double>(kk[t]) - (ku[t] + carry)) > 1e-6)
        throw domain_error("round_to_integer: carry accounting failed");

    // step 3: neighbour changes to restore sum u k_u = n
    long long cov = 0;
    for (int u = u_star; u <= t; ++u) cov += static_cast<long long>(u) * kk[u];
    if (cov < n) throw domain_error("round_to_integer: coverage fell below n");
    int changes = 0;
    while (cov > n) {
        bool done = false;
        for (int up1 = t; up1 > u_star; --up1) {
            if (kk[up1] >= 1) {
                --kk[up1];
                ++kk[up1 - 1];
                --cov;
                ++changes;
                done = true;
                break;
            }
        }
        if (!done)
            throw domain_error("round_to_integer: no feasible neighbour change");
    }

    std::map<int, long long> counts;
    for (int u = u_star; u <= t; ++u)
        if (kk[u] > 0) counts[u] = kk[u];
    double pert = 0.0;
    for (int u = 1; u <= t; ++u) {
        double target = cp.p(u) * static_cast<double>(k);
        double got = u >= u_star ? static_cast<double>(kk[u]) : 0.0;
        pert += std::fabs(got - target);
    }
    return {Profile(n, t, counts), u_star, c_prime, changes, pert};
}

namespace {

// enumerate t-bounded k-profiles of n, largest size first
template <typename Fn>
void for_each_profile(long long n, long long k, int t, Fn&& fn,
                      std::vector<std::pair<int, long long>>& acc, int u, long long rem_n,
                      long long rem_k) {
    if (rem_n == 0 && rem_k == 0) {
        fn(acc);
        return;
    }
    if (u < 1 || rem_k <= 0) return;
    // with sizes <= u the coverage is at most u * rem_k, at least rem_k
    if (rem_n < rem_k || rem_n > static_cast<long long>(u) * rem_k) return;
    long long cmax = std::min(rem_k, rem_n / u);
    for (long long c = cmax; c >= 0; --c) {
        if (c > 0) acc.emplace_back(u, c);
        for_each_profile(n, k, t, fn, acc, u - 1, rem_n - c * u, rem_k - c);
        if (c > 0) acc.pop_back();
    }
}

} // namespace

LogReal exact_first_moment(long long n, long long k, int t, const GraphParams& params) {
    if (n > 60) throw domain_error("exact_first_moment: n too large for profile enumeration");
    if (static_cast<long long>(params.n) != n)
        throw domain_error("exact_first_moment: params n mismatch");
    LogReal total = LogReal::zero();
    std::vector<std::pair<int, long long>> acc;
    for_each_profile(
        n, k, t,
        [&](const std::vector<std::pair<int, long long>>& entries) {
            double lg = log_factorial(static_cast<double>(n));
            long long f = 0;
            for (auto [u, c] : entries) {
                lg -= c * log_factorial(u);
                lg -= log_factorial(static_cast<double>(c));
                f += c * (static_cast<long long>(u) * (u - 1) / 2);
            }
            total = total + LogReal::from_log(lg + f * std::log(params.q));
        },
        acc, t, n, k);
    return total;
}

DyadicE exact_first_moment_dyadic(long long n, long long k, int t) {
    if (n > 12) throw domain_error("exact_first_moment_dyadic: rational-exact mode needs n <= 12");
    int shift = static_cast<int>(n * (n - 1) / 2);
    unsigned __int128 num = 0;
    std::vector<std::pair<int, long long>> acc;
    for_each_profile(
        n, k, t,
        [&](const std::vector<std::pair<int, long long>>& entries) {
            std::map<int, long long> counts(entries.begin(), entries.end());
            Profile pr(n, t, counts);
            long long cnt = unordered_count_exact(pr);  // n! / (prod u!^{k_u} k_u!)
            long long f = f_count(pr);
            num += static_cast<unsigned __int128>(cnt) << (shift - f);
        },
        acc, t, n, k);
    return {num, shift};
}

ThresholdResult threshold(long long n, int t, bool exact, const GraphParams& params) {
    ThresholdResult res;
    if (exact) {
        if (n > 60) throw domain_error("threshold: exact mode needs n <= 60");
        res.mode = "exact";
        bool dyadic = n <= 12 && params.p == 0.5;
        LogReal prev = LogReal::zero();
        for (long long k = std::max<long long>(1, (n + t - 1) / t); k <= n; ++k) {
            if (dyadic) {
                DyadicE e = exact_first_moment_dyadic(n, k, t);
                if (e.at_least_one()) {
                    res.k = k;
                    res.value_at_k = exact_first_moment(n, k, t, params).log_abs;
                    res.value_below = prev.is_zero() ? -1e300 : prev.log_abs;
                    return res;
                }
                prev = exact_first_moment(n, k, t, params);
            } else {
                LogReal e = exact_first_moment(n, k, t, params);
                if (!e.is_zero() && e.log_abs >= 0.0) {
                    res.k = k;
                    res.value_at_k = e.log_abs;
                    res.value_below = prev.is_zero() ? -1e300 : prev.log_abs;
                    return res;
                }
                prev = e;
            }
        }
        throw domain_error("threshold: no k <= n reaches expectation 1");
    }
    res.mode = "L0";
    double q = params.q;
    long long lo = n / t + 1;
    while (static_cast<double>(n) / lo >= t) ++lo;  // need rho < t
    long long hi = n - 1;
    if (L0(n, lo, t, q) >= 0.0) {
        res.k = lo;
    } else {
        if (L0(n, hi, t, q) < 0.0)
            throw domain_error("threshold: L0 stays negative up to k = n-1");
        while (lo + 1 < hi) {
            long long mid = lo + (hi - lo) / 2;
            if (L0(n, mid, t, q) >= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        res.k = hi;
    }
    res.value_at_k = L0(n, res.k, t, q);
    res.value_below = res.k - 1 > n / t ? L0(n, res.k - 1, t, q) : -1e300;
    double ln_n = std::log(static_cast<double>(n));
    double lb = std::log(1.0 / q);
    res.uncertainty = static_cast<long long>(
        std::ceil(default_constants().lk_gap * std::pow(ln_n, 1.5) / ((2.0 / lb) * ln_n * ln_n)));
    return res;
}

} // namespace tamechroma
