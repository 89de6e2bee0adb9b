#ifndef TAMECHROMA_CONSTANTS_HPP
#define TAMECHROMA_CONSTANTS_HPP

namespace tamechroma {

// Every tested O(.) constant and tolerance knob in one place. The source
// papers state many bounds only up to unspecified constants; these are the
// concrete bands the tool checks, and the reproducibility knobs of the CLI.
struct Constants {
    double mu_ratio_band = 32.0;       // factor band around the mu_u/mu_a predictor
    double phi_band = 10.0;            // |phi*n - ln E| <= phi_band * n lnln n / ln n
    double y_slack = 20.0;             // y_t within 2 ln n - lnln n +- y_slack
    double mulam_bound = 20.0;         // |mu_n|, |lambda_n| <= mulam_bound near threshold
    double ratio_decay = 64.0;         // xi_{i+1} <= ratio_decay * 2^-i * xi_i
    double l0_cross = 50.0;            // |L0| <= l0_cross * ln^{3/2} n at the threshold
    double deriv_band = 40.0;          // L0 k-derivative within (2/ln2)ln^2 n +- deriv_band*ln n lnln n
    double lk_gap = 100.0;             // |L_{k*} - L0| <= lk_gap * ln^{3/2} n
    double rho_drift_band = 1.0;       // |n/k_t - (alpha0 - 1 - 2/ln2)| <= rho_drift_band
    double t2_band = 1e4;              // T(2) <= t2_band * ln^2 n
    double t3_band = 32.0;             // T(3) <= t3_band * ln^3 n / t
    double mckay_tiny_lo = 0.7;        // tiny-scale McKay formula/exact ratio band
    double mckay_tiny_hi = 1.4;
    double gnm_mode_band = 0.01;       // exact/asymptotic exclusion-ratio agreement
    int series_trunc = 20;             // Appendix-B truncation index
    double tail_log = -83.0;           // ln of the certified series tail bound
    double bracket_width = 1e-8;       // default certified bracket width for mu
    double newton_tol = 1e-12;         // transformed-system Newton tolerance
    double residual_tol = 1e-10;       // original constraint-residual requirement
    double tameness_c = 0.5;           // exponent c in the condition-(b) surrogate
};

inline const Constants& default_constants() {
    static const Constants c;
    return c;
}

} // namespace tamechroma

#endif
