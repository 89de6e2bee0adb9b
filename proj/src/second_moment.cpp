#include "tamechroma/second_moment.hpp"

#include <cmath>

#include "tamechroma/errors.hpp"
#include "tamechroma/gamma.hpp"

namespace tamechroma {

OverlapSpec::OverlapSpec(Profile pr, std::map<int, long long> ell_,
                         std::map<std::tuple<int, int, int>, long long> r_)
    : profile(std::move(pr)), ell(std::move(ell_)), r(std::move(r_)) {
    int a = profile.bound();
    for (auto& [u, l] : ell) {
        if (l < 0 || l > profile.count(u))
            throw domain_error("OverlapSpec: require 0 <= ell_u <= k_u");
        n_id_ += static_cast<long long>(u) * l;
    }
    long long blocks = 0;
    for (auto& [key, cnt] : r) {
        auto [x, u, v] = key;
        if (cnt < 0) throw domain_error("OverlapSpec: negative overlap count");
        if (cnt == 0) continue;
        if (x < 2) throw domain_error("OverlapSpec: r stores only block sizes x >= 2");
        if (profile.count(u) == 0 || profile.count(v) == 0)
            throw domain_error("OverlapSpec: overlap between sizes outside the profile support");
        // blocks never exceed either part, never reach size a, and a block
        // equal to both parts would make them identical, not transmuted
        if (x > std::min(u, v) || x > a - 1 || (x == u && x == v))
            throw domain_error("OverlapSpec: block size inconsistent with part sizes");
        blocks += static_cast<long long>(x) * cnt;
    }
    r1_ = n_tr() - blocks;
    if (r1_ < 0) throw domain_error("OverlapSpec: r_1 would be negative");
}

long long OverlapSpec::ell_count(int u) const {
    auto it = ell.find(u);
    return it == ell.end() ? 0 : it->second;
}

long long OverlapSpec::r_x(int x) const {
    if (x == 1) return r1_;
    long long s = 0;
    for (auto& [key, cnt] : r)
        if (std::get<0>(key) == x) s += cnt;
    return s;
}

SharedForbidden shared_forbidden(const OverlapSpec& spec) {
    long long gid = 0, gtr = 0;
    for (auto& [u, l] : spec.ell) gid += l * (static_cast<long long>(u) * (u - 1) / 2);
    for (auto& [key, cnt] : spec.r) {
        long long z = std::get<0>(key);
        gtr += cnt * (z * (z - 1) / 2);
    }
    return {gid + gtr, gid, gtr};
}

LogReal t_term(const OverlapSpec& spec, int x, int u, int v, double q) {
    if (x < 2) throw domain_error("t_term: require x >= 2");
    long long tu = spec.t_u(u), tv = spec.t_u(v);
    if (tu <= 0 || tv <= 0 || x > u || x > v) return LogReal::zero();
    if (x > spec.n_tr()) throw domain_error("t_term: x exceeds n_tr");
    double lg = std::log(static_cast<double>(tu)) + std::log(static_cast<double>(tv)) +
                log_binomial(u, x) + log_binomial(v, x) + x * spec.eta() -
                log_binomial(static_cast<double>(spec.n_tr()), x) - choose2(x) * std::log(q);
    return LogReal::from_log(lg);
}

LogReal t_sum(const OverlapSpec& spec, int x, double q) {
    int a = spec.profile.bound();
    if (x == a - 1) {
        long long ta = spec.t_u(a), ta1 = spec.t_u(a - 1);
        double num = static_cast<double>(a) * a * ta * ta + 2.0 * a * ta * ta1;
        if (num <= 0) return LogReal::zero();
        if (x > spec.n_tr()) throw domain_error("t_sum: x exceeds n_tr");
        double lg = std::log(num) + (a - 1) * spec.eta() -
                    log_binomial(static_cast<double>(spec.n_tr()), a - 1) -
                    choose2(a - 1) * std::log(q);
        return LogReal::from_log(lg);
    }
    if (x < 2 || x > a - 2) throw domain_error("t_sum: require 2 <= x <= a-1");
    // T(x,u,v) factorises, so the double sum is a square
    double s = 0.0;
    for (auto [u, ku] : spec.profile.entries()) {
        long long tu = spec.t_u(u);
        if (tu > 0 && x <= u) s += tu * std::exp(log_binomial(u, x));
    }
    if (s <= 0.0) return LogReal::zero();
    if (x > spec.n_tr()) throw domain_error("t_sum: x exceeds n_tr");
    double lg = 2.0 * std::log(s) + x * spec.eta() -
                log_binomial(static_cast<double>(spec.n_tr()), x) - choose2(x) * std::log(q);
    return LogReal::from_log(lg);
}

FTerms f_terms(const OverlapSpec& spec, const GraphParams& params,
               const LogReal& partial_expectation) {
    if (partial_expectation.is_zero())
        throw domain_error("f_terms: zero partial expectation, F1 undefined");
    const Profile& pr = spec.profile;
    double lgF1 = 0.0;
    for (auto [u, ku] : pr.entries())
        lgF1 += 2.0 * log_binomial(static_cast<double>(ku),
                                   static_cast<double>(spec.ell_count(u)));
    LogReal F1 = LogReal::from_log(lgF1) / partial_expectation;

    auto sf = shared_forbidden(spec);
    double f = static_cast<double>(f_count(pr));
    double n = static_cast<double>(pr.n());
    int a = pr.bound();
    double corr = f - sf.g_id - static_cast<double>(a) * (spec.n_tr() - spec.r1());
    double F3 = -(2.0 * (params.b - 1.0) * f * (f - 2.0 * sf.g) + 2.0 * corr * corr) / (n * n);

    double ln_n = std::log(n);
    double log_mu_a = mu(params, a).log_abs;
    double ka = static_cast<double>(pr.count(a));
    double ka1 = static_cast<double>(pr.count(a - 1));
    double ka2 = static_cast<double>(pr.count(a - 2));
    double M1 = ka == 0.0 ? 0.0
                          : std::exp(4.0 * std::log(ka) + 2.0 * std::log(ln_n) - std::log(n) -
                                     2.0 * log_mu_a);
    double ln_sq = ln_n * ln_n, ln_cu = ln_sq * ln_n;
    double M2 = std::exp(std::log(n) - std::log(ln_n) - log_mu_a);
    double mid = ka * ka * ln_cu + ka * ka1 * ln_sq;
    if (mid > 0) M2 += std::exp(std::log(mid) - std::log(n) - log_mu_a);
    double tail = ka2 * ln_n + ka1 * ln_sq + ka * ln_cu;
    if (tail > 0) M2 += std::exp(2.0 * std::log(tail) - 2.0 * std::log(n) - log_mu_a);
    return {F1, F3, M1, M2};
}

McKayCount mckay_count(const std::vector<long long>& sigma, const std::vector<long long>& tau) {
    long long S = 0, St = 0, sig_max = 0, tau_max = 0;
    double S2 = 0, T2 = 0;
    for (long long s : sigma) {
        S += s;
        S2 += static_cast<double>(s) * (s - 1);
        sig_max = std::max(sig_max, s);
    }
    for (long long t : tau) {
        St += t;
        T2 += static_cast<double>(t) * (t - 1);
        tau_max = std::max(tau_max, t);
    }
    if (S != St) throw domain_error("mckay_count: row and column sums disagree");
    if (S <= 0) throw domain_error("mckay_count: require S > 0");
    double lg = log_factorial(static_cast<double>(S));
    for (long long s : sigma) lg -= log_factorial(static_cast<double>(s));
    for (long long t : tau) lg -= log_factorial(static_cast<double>(t));
    lg -= S2 * T2 / (2.0 * static_cast<double>(S) * S);
    long long mx = std::max(sig_max, tau_max);
    bool valid = static_cast<double>(mx) * mx < static_cast<double>(S) / 6.0;
    return {LogReal::from_log(lg), valid};
}

} // namespace tamechroma
