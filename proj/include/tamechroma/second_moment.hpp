#ifndef TAMECHROMA_SECOND_MOMENT_HPP
#define TAMECHROMA_SECOND_MOMENT_HPP

#include <map>
#include <tuple>
#include <vector>

#include "tamechroma/logreal.hpp"
#include "tamechroma/profiles.hpp"

namespace tamechroma {

// Overlap data of a pair of partitions with common profile: identical-part
// counts ell_u and the sparse overlap sequence r_x^{u,v} for blocks of size
// x >= 2 shared between transmuted parts. r_1 is derived from the counts.
struct OverlapSpec {
    Profile profile;                              // the common profile k
    std::map<int, long long> ell;                 // u -> number of identical parts
    std::map<std::tuple<int, int, int>, long long> r;  // (x,u,v) -> r_x^{u,v}, x >= 2

    OverlapSpec(Profile pr, std::map<int, long long> ell_,
                std::map<std::tuple<int, int, int>, long long> r_);

    long long t_u(int u) const { return profile.count(u) - ell_count(u); }
    long long ell_count(int u) const;
    long long r_x(int x) const;  // sum over (u,v)
    long long n_id() const { return n_id_; }
    long long n_tr() const { return profile.n() - n_id_; }
    long long r1() const { return r1_; }
    double eta() const {
        return n_tr() == 0 ? 0.0 : static_cast<double>(n_tr() - r1_) / n_tr();
    }
    double lambda() const { return static_cast<double>(n_id_) / profile.n(); }

  private:
    long long n_id_ = 0;
    long long r1_ = 0;
};

struct SharedForbidden {
    long long g;      // total shared forbidden edges
    long long g_id;   // from identical parts
    long long g_tr;   // from overlap blocks of size >= 2
};

// g = sum C(u,2) ell_u + sum_{z>=2} C(z,2) r_z
SharedForbidden shared_forbidden(const OverlapSpec& spec);

// T(x,u,v) = t_u t_v C(u,x) C(v,x) e^{x eta} / (C(n_tr, x) q^{C(x,2)})
LogReal t_term(const OverlapSpec& spec, int x, int u, int v, double q);

// T(x) = sum_{u,v} T(x,u,v) for 2 <= x <= a-2, and the special
// T(a-1) = e^{(a-1)eta} (a^2 t_a^2 + 2 a t_a t_{a-1}) / (C(n_tr,a-1) q^{C(a-1,2)}).
LogReal t_sum(const OverlapSpec& spec, int x, double q);

struct FTerms {
    LogReal F1;   // prod C(k_u, ell_u)^2 / E_p[X-bar_ell]
    double F3;    // -(2(b-1)f(f-2g) + 2(f - g_id - a(n_tr - r1))^2) / n^2
    double M1;    // k_a^4 ln^2 n / (n mu_a^2)
    double M2;    // the three-part error functional
};

// partial_expectation is E_p[X-bar_ell] for the identical-part profile,
// supplied by the caller (profiles module).
FTerms f_terms(const OverlapSpec& spec, const GraphParams& params,
               const LogReal& partial_expectation);

struct McKayCount {
    LogReal value;
    bool valid_regime;  // max(sigma,tau)^2 < S/6
};

// Asymptotic count of 0-1 matrices with prescribed row/column sums:
// S!/(prod sigma_i! prod tau_j!) exp(-S2 T2 / (2 S^2)).
McKayCount mckay_count(const std::vector<long long>& sigma, const std::vector<long long>& tau);

} // namespace tamechroma

#endif
