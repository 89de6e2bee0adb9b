#ifndef TAMECHROMA_LIMIT_SYSTEM_HPP
#define TAMECHROMA_LIMIT_SYSTEM_HPP

#include <string>
#include <vector>

#include "tamechroma/interval.hpp"

namespace tamechroma {

// The limiting profile system: zeta_i = e^{lambda + mu i - (ln2/2) i^2} for
// i >= i0, with mass 1 and mean T(x) = 1 + 2/ln2 - x. All quantities are
// certified intervals obtained from truncated series with an explicit tail
// bound (truncation at i = 20, tail below e^{-83}).
struct LimitSystem {
    int i0 = 1;
    double x = 0.0;
    Interval T;
    Interval mu;
    Interval lambda;
    std::vector<Interval> zeta;  // indices i0 .. trunc
    int trunc = 20;

    const Interval& zeta_at(int i) const;
};

// Certified solve; mu bracket narrowed to the requested width by bisection
// on the certified sign tests. Hard error if the bracket cannot exclude
// mu >= 3 (which the tail bound requires).
LimitSystem solve_limit(int i0, double x, double width = 1e-8);

// Enclosure of phi(s, x, i0) = -(1-sum zeta)ln(1-sum zeta)
//                              + (ln2/2) sum zeta_i (i - T), i0 <= i <= s.
// If 1 - sum zeta cannot be certified positive the enclosure is widened and
// *widened set.
Interval phi(const LimitSystem& sys, int s, bool* widened = nullptr);

struct X0Result {
    Interval bracket;    // certified bracket around the root of phi(1, x, 1)
    Interval phi_left;   // certified negative at bracket.lo
    Interval phi_right;  // certified positive at bracket.hi
};

X0Result x0_root(double tol);

struct TailSums {
    int ell = 0;
    Interval S;       // sum_j e^{mu j - (ln2/2)(j^2 + 2 j ell)} >= 1
    Interval Sprime;  // same with factor j
    Interval E;       // S(-ln(zeta_ell S) - (ln2/2) ell + (ln2/2) T) - (ln2/2) S'
};

TailSums tail_sums(const LimitSystem& sys, int ell);

enum class SignAgreement { agree, disagree, indeterminate };

// Checks sign(phi(s, x, i0)) == sign(E_{s+1}) when both enclosures exclude 0.
SignAgreement e_ell_equiv(const LimitSystem& sys, int s);

struct BorderValue {
    std::string name;        // e.g. "h4(0.018,0.09)"
    std::string case_label;  // e.g. "case 3 (i0=1, s=2)"
    Interval enclosure;
    double printed;          // the reference value, 0 when none is printed
    int printed_decimals;    // decimal places of the reference
    bool positive;           // enclosure strictly positive (or exact zero where expected)
    bool matches_printed;
};

struct RangeCheck {
    std::string name;  // e.g. "zeta1(0.15) < 0.026"
    bool satisfied;
    double margin;
};

struct GridCheck {
    std::string name;
    bool satisfied;
};

struct Certificate {
    std::vector<BorderValue> borders;
    std::vector<RangeCheck> ranges;
    std::vector<GridCheck> monotonicity;   // grid-verified assumptions, not proofs
    std::vector<GridCheck> e4_reduction;   // sign equivalence and E4 > 0 at grid points
    std::vector<std::string> assumptions;  // what is assumed rather than certified
    bool certified = false;
    std::string failure;  // first failing case, when any
};

// Executes the full border-point program: solves the systems on the grid
// x in {0, 0.04, 0.15, 2/ln2-2, 1} for both i0, verifies the zeta ranges,
// evaluates every printed h-value with interval arithmetic, checks the
// E4-based reduction and the monotonicity assumptions on a 100-point grid.
Certificate certify_positivity();

} // namespace tamechroma

#endif
