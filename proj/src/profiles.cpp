#include "tamechroma/profiles.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "tamechroma/errors.hpp"
#include "tamechroma/gamma.hpp"

namespace tamechroma {

Profile::Profile(long long n, int t, std::map<int, long long> counts)
    : n_(n), t_(t), counts_(std::move(counts)) {
    if (n_ < 0) throw domain_error("Profile: negative n");
    for (auto it = counts_.begin(); it != counts_.end();) {
        auto [u, c] = *it;
        if (c < 0) throw domain_error("Profile: negative class count");
        if (c > 0 && (u < 1 || u > t_))
            throw domain_error("Profile: class size outside [1, t]");
        if (c == 0) {
            it = counts_.erase(it);
            continue;
        }
        k_ += c;
        coverage_ += static_cast<long long>(u) * c;
        ++it;
    }
    if (coverage_ > n_) throw domain_error("Profile: coverage exceeds n");
    for (auto it = counts_.rbegin(); it != counts_.rend(); ++it)
        entries_.emplace_back(it->first, it->second);
}

long long Profile::count(int u) const {
    auto it = counts_.find(u);
    return it == counts_.end() ? 0 : it->second;
}

LogReal p_count(const Profile& pr) {
    double lg = log_factorial(static_cast<double>(pr.n()));
    // partial profiles: ordered tuples of disjoint classes, so the
    // uncovered vertices contribute a falling-factorial correction
    lg -= log_factorial(static_cast<double>(pr.n() - pr.coverage()));
    for (auto [u, c] : pr.entries()) lg -= c * log_factorial(u);
    return LogReal::from_log(lg);
}

long long f_count(const Profile& pr) {
    long long f = 0;
    for (auto [u, c] : pr.entries()) f += c * (static_cast<long long>(u) * (u - 1) / 2);
    return f;
}

LogReal expect_ordered(const Profile& pr, const GraphParams& params, Model model) {
    if (pr.n() != static_cast<long long>(params.n))
        throw domain_error("expect_ordered: profile and params disagree on n");
    long long f = f_count(pr);
    if (model == Model::gnp)
        return p_count(pr) * LogReal::from_log(f * std::log(params.q));
    return p_count(pr) * gnm_exclusion_ratio(params, static_cast<double>(f), true);
}

LogReal expect_unordered(const Profile& pr, const GraphParams& params, Model model) {
    LogReal e = expect_ordered(pr, params, model);
    double lg = 0.0;
    for (auto [u, c] : pr.entries()) lg += log_factorial(static_cast<double>(c));
    return e / LogReal::from_log(lg);
}

TamenessReport tameness_check(const Profile& pr, const GraphParams& params,
                              const TamenessWitness& witness) {
    if (!(witness.c > 0.0 && witness.c < 1.0))
        throw domain_error("tameness_check: require c in (0,1)");
    long al = alpha(params);
    TamenessReport rep;
    double lb = std::log(params.b);
    for (auto [u, c] : pr.entries()) {
        long i = al - u;
        double log_bound = -static_cast<double>(i) * witness.gamma(i) * lb;
        if (std::log(pr.kappa(u)) >= log_bound) rep.violations_a.push_back(u);
    }
    rep.cond_a = rep.violations_a.empty();
    rep.ln_Em = expect_unordered(pr, params, Model::gnm).log_abs;
    rep.bound_b = -std::pow(params.n, 1.0 - witness.c);
    rep.cond_b = rep.ln_Em >= rep.bound_b;
    return rep;
}

Profile equitable_profile(long long n, long long k) {
    if (k < 1 || k > n) throw domain_error("equitable_profile: require 1 <= k <= n");
    long long lo = n / k;            // floor(n/k)
    long long k_large = n - k * lo;  // Delta * k, exactly
    std::map<int, long long> counts;
    if (k_large > 0) counts[static_cast<int>(lo + 1)] = k_large;
    counts[static_cast<int>(lo)] += k - k_large;
    return Profile(n, static_cast<int>(lo + (k_large > 0 ? 1 : 0)), counts);
}

double phi_exponent(const std::vector<std::pair<double, double>>& kappa,
                    const GraphParams& params) {
    long al = alpha(params);
    double a0 = alpha0(params);
    double lb = std::log(params.b);
    double ksum = 0.0, linear = 0.0;
    for (auto [u, ku] : kappa) {
        if (ku == 0.0) continue;
        if (ku < 0.0) throw domain_error("phi_exponent: negative kappa_u");
        if (u < 0.1 * al || u > 10.0 * al)
            throw domain_error("phi_exponent: support outside [0.1 alpha, 10 alpha]");
        ksum += ku;
        linear += ku * (a0 - 1.0 - 2.0 / lb - u);
    }
    if (ksum > 1.0 + 1e-12) throw domain_error("phi_exponent: sum kappa_u > 1");
    double entropy = 0.0;
    double rest = 1.0 - ksum;
    if (rest > 0.0) entropy = -rest * std::log(rest);
    return entropy + 0.5 * lb * linear;
}

void write_profile(std::ostream& os, const Profile& pr) {
    os << "# n=" << pr.n() << " t=" << pr.bound() << "\n";
    for (auto [u, c] : pr.entries()) os << u << " " << c << "\n";
}

Profile read_profile(std::istream& is) {
    std::string line;
    long long n = -1;
    int t = -1;
    std::map<int, long long> counts;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t pn = line.find("n=");
            std::size_t pt = line.find("t=");
            if (pn == std::string::npos || pt == std::string::npos)
                throw domain_error("read_profile: malformed header");
            n = std::stoll(line.substr(pn + 2));
            t = std::stoi(line.substr(pt + 2));
            continue;
        }
        std::istringstream ls(line);
        int u;
        long long c;
        if (!(ls >> u >> c)) throw domain_error("read_profile: malformed line: " + line);
        counts[u] += c;
    }
    if (n < 0 || t < 0) throw domain_error("read_profile: missing header");
    return Profile(n, t, counts);
}

long long binomial_exact(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long long p_count_exact(const Profile& pr) {
    if (pr.n() > 20) throw domain_error("p_count_exact: n too large for 64-bit factorials");
    long long rest = pr.n();
    long long r = 1;
    for (auto [u, c] : pr.entries())
        for (long long j = 0; j < c; ++j) {
            r *= binomial_exact(rest, u);
            rest -= u;
        }
    return r;
}

long long unordered_count_exact(const Profile& pr) {
    long long r = p_count_exact(pr);
    for (auto [u, c] : pr.entries())
        for (long long j = 2; j <= c; ++j) r /= j;
    return r;
}

} // namespace tamechroma
