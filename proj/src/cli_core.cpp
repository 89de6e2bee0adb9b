#include "tamechroma/cli_core.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tamechroma/constants.hpp"
#include "tamechroma/errors.hpp"
#include "tamechroma/graph_lab.hpp"
#include "tamechroma/iset_stats.hpp"
#include "tamechroma/limit_system.hpp"
#include "tamechroma/logreal.hpp"
#include "tamechroma/optimal_profile.hpp"
#include "tamechroma/profiles.hpp"
#include "tamechroma/rng.hpp"
#include "tamechroma/second_moment.hpp"

namespace tamechroma {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

json interval_json(const Interval& v) { return json{{"lo", v.lo}, {"hi", v.hi}}; }

json logreal_json(const LogReal& v) {
    return json{{"sign", v.sign}, {"log_abs", v.sign == 0 ? 0.0 : v.log_abs}};
}

json constants_json() {
    const Constants& c = default_constants();
    json j;
    j["schema_version"] = kSchemaVersion;
    j["mu_ratio_band"] = c.mu_ratio_band;
    j["phi_band"] = c.phi_band;
    j["y_slack"] = c.y_slack;
    j["mulam_bound"] = c.mulam_bound;
    j["ratio_decay"] = c.ratio_decay;
    j["l0_cross"] = c.l0_cross;
    j["deriv_band"] = c.deriv_band;
    j["lk_gap"] = c.lk_gap;
    j["rho_drift_band"] = c.rho_drift_band;
    j["t2_band"] = c.t2_band;
    j["t3_band"] = c.t3_band;
    j["mckay_tiny_lo"] = c.mckay_tiny_lo;
    j["mckay_tiny_hi"] = c.mckay_tiny_hi;
    j["gnm_mode_band"] = c.gnm_mode_band;
    j["series_trunc"] = c.series_trunc;
    j["tail_log"] = c.tail_log;
    j["bracket_width"] = c.bracket_width;
    j["newton_tol"] = c.newton_tol;
    j["residual_tol"] = c.residual_tol;
    j["tameness_c"] = c.tameness_c;
    return j;
}

json certificate_json(const Certificate& cert) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["certified"] = cert.certified;
    if (!cert.failure.empty()) j["failure"] = cert.failure;
    json borders = json::array();
    for (const auto& b : cert.borders) {
        json e;
        e["name"] = b.name;
        e["case"] = b.case_label;
        e["enclosure"] = interval_json(b.enclosure);
        if (b.printed_decimals >= 0) e["printed"] = b.printed;
        e["positive"] = b.positive;
        e["matches_printed"] = b.matches_printed;
        borders.push_back(e);
    }
    j["border_values"] = borders;
    json ranges = json::array();
    for (const auto& r : cert.ranges)
        ranges.push_back(json{{"name", r.name}, {"satisfied", r.satisfied}, {"margin", r.margin}});
    j["zeta_ranges"] = ranges;
    json mono = json::array();
    for (const auto& m : cert.monotonicity)
        mono.push_back(json{{"name", m.name}, {"satisfied", m.satisfied}});
    j["monotonicity_grid"] = mono;
    json e4 = json::array();
    for (const auto& e : cert.e4_reduction)
        e4.push_back(json{{"name", e.name}, {"satisfied", e.satisfied}});
    j["e4_reduction"] = e4;
    j["assumptions"] = cert.assumptions;
    return j;
}

Profile profile_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open profile file: " + path);
    return read_profile(in);
}

int cmd_stats(double n, double p, std::optional<long> t_opt, bool as_json, std::ostream& out) {
    GraphParams params = GraphParams::gnp(n, p);
    long al = alpha(params);
    long t = t_opt.value_or(al);
    LogReal mu_t = mu(params, static_cast<double>(t));
    double a0 = alpha0(params);
    double th = theta(params);
    if (as_json) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["n"] = n;
        j["p"] = p;
        j["t"] = t;
        j["log_mu_t"] = mu_t.log_abs;
        j["alpha0"] = a0;
        j["alpha"] = al;
        j["theta"] = th;
        out << j.dump(2) << "\n";
    } else {
        out << "n\tp\tt\tlog_mu_t\talpha0\talpha\ttheta\n";
        out << n << "\t" << p << "\t" << t << "\t" << mu_t.log_abs << "\t" << a0 << "\t" << al
            << "\t" << th << "\n";
    }
    return 0;
}

int cmd_profile_expect(const std::string& file, double p, std::optional<double> m,
                       const std::string& model_name, bool as_json, std::ostream& out) {
    Profile pr = profile_from_file(file);
    Model model = model_name == "gnm" ? Model::gnm : Model::gnp;
    GraphParams params =
        model == Model::gnm
            ? GraphParams::gnm(static_cast<double>(pr.n()), m.value_or(-1.0), p)
            : GraphParams::gnp(static_cast<double>(pr.n()), p);
    if (model == Model::gnm && !m) throw domain_error("profile expect: gnm model needs --m");
    LogReal ord = expect_ordered(pr, params, model);
    LogReal unord = expect_unordered(pr, params, model);
    if (as_json) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["n"] = pr.n();
        j["t"] = pr.bound();
        j["k"] = pr.k();
        j["f"] = f_count(pr);
        j["model"] = model_name;
        j["log_expect_ordered"] = logreal_json(ord);
        j["log_expect_unordered"] = logreal_json(unord);
        out << j.dump(2) << "\n";
    } else {
        out << "k\tf\tlogE_ordered\tlogE_unordered\n";
        out << pr.k() << "\t" << f_count(pr) << "\t" << ord.log_abs << "\t" << unord.log_abs
            << "\n";
    }
    return 0;
}

int cmd_optimize(long long n, long long k, int t, const std::string& emit, std::ostream& out) {
    ContinuousProfile cp = solve_continuous(n, k, t);
    ReparamProfile rp = reparametrize(cp, n);
    RoundedProfile rounded = round_to_integer(cp, n, k, t);
    double l0 = L0(n, k, t);
    std::vector<std::pair<int, double>> int_counts;
    for (auto [u, c] : rounded.profile.entries())
        int_counts.emplace_back(u, static_cast<double>(c));
    double lk = L_value(n, k, int_counts);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = n;
    j["k"] = k;
    j["t"] = t;
    j["alpha"] = cp.alpha;
    j["rho"] = cp.rho;
    j["x_t"] = cp.x_t;
    j["y_t"] = cp.y_t;
    j["lambda_n"] = rp.lambda_n;
    j["mu_n"] = rp.mu_n;
    j["residual"] = cp.residual;
    json xi = json::array();
    for (int i = rp.i_min; i <= rp.i_max; ++i)
        xi.push_back(json{{"i", i}, {"xi", rp.xi_at(i)}});
    j["xi"] = xi;
    j["L0"] = l0;
    j["L_rounded"] = lk;
    j["rounding"] = json{{"u_star", rounded.u_star},
                         {"c_prime", rounded.c_prime},
                         {"neighbour_changes", rounded.neighbour_changes},
                         {"perturbation", rounded.perturbation},
                         {"gap", std::fabs(lk - l0)}};
    json prof = json::array();
    for (auto [u, c] : rounded.profile.entries()) prof.push_back(json{{"u", u}, {"k_u", c}});
    j["profile"] = prof;
    out << j.dump(2) << "\n";
    if (!emit.empty()) {
        std::ofstream os(emit);
        if (!os) throw domain_error("cannot open output file: " + emit);
        write_profile(os, rounded.profile);
    }
    return 0;
}

int cmd_threshold(long long n, int t, bool exact, double p, std::ostream& out) {
    GraphParams params = GraphParams::gnp(static_cast<double>(n), p);
    ThresholdResult res = threshold(n, t, exact, params);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = n;
    j["t"] = t;
    j["mode"] = res.mode;
    j["k"] = res.k;
    j["uncertainty"] = res.uncertainty;
    j["value_at_k"] = res.value_at_k;
    j["value_below"] = res.value_below;
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_limits(int i0, double x, std::optional<int> s, double width, std::ostream& out) {
    if (width < 1e-12 || width > 1.0)
        throw domain_error("limits: --width must lie in [1e-12, 1]");
    LimitSystem sys = solve_limit(i0, x, width);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["i0"] = i0;
    j["x"] = x;
    j["T"] = interval_json(sys.T);
    j["mu"] = interval_json(sys.mu);
    j["lambda"] = interval_json(sys.lambda);
    json zs = json::array();
    for (int i = sys.i0; i <= sys.trunc; ++i)
        zs.push_back(json{{"i", i}, {"zeta", interval_json(sys.zeta_at(i))}});
    j["zeta"] = zs;
    if (s) {
        bool widened = false;
        Interval ph = phi(sys, *s, &widened);
        j["s"] = *s;
        j["phi"] = interval_json(ph);
        j["phi_widened"] = widened;
        TailSums ts = tail_sums(sys, std::max(*s, sys.i0));
        j["tail_sums"] = json{{"ell", ts.ell},
                              {"S", interval_json(ts.S)},
                              {"Sprime", interval_json(ts.Sprime)},
                              {"E", interval_json(ts.E)}};
    }
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_verify_positivity(const std::string& report, std::ostream& out) {
    Certificate cert = certify_positivity();
    json j = certificate_json(cert);
    if (!report.empty()) {
        std::ofstream os(report);
        if (!os) throw domain_error("cannot open report file: " + report);
        os << j.dump(2) << "\n";
        out << (cert.certified ? "certified" : "NOT certified: " + cert.failure) << "\n";
    } else {
        out << j.dump(2) << "\n";
    }
    return cert.certified ? 0 : 2;
}

int cmd_sm_terms(const std::string& spec_file, std::ostream& out) {
    std::ifstream in(spec_file);
    if (!in) throw domain_error("cannot open spec file: " + spec_file);
    json spec = json::parse(in);
    long long n = spec.at("n").get<long long>();
    int t = spec.at("t").get<int>();
    double p = spec.value("p", 0.5);
    std::map<int, long long> counts;
    for (auto& [key, val] : spec.at("profile").items())
        counts[std::stoi(key)] = val.get<long long>();
    Profile pr(n, t, counts);
    std::map<int, long long> ell;
    if (spec.contains("ell"))
        for (auto& [key, val] : spec.at("ell").items())
            ell[std::stoi(key)] = val.get<long long>();
    std::map<std::tuple<int, int, int>, long long> r;
    if (spec.contains("r"))
        for (auto& row : spec.at("r"))
            r[{row.at(0).get<int>(), row.at(1).get<int>(), row.at(2).get<int>()}] =
                row.at(3).get<long long>();
    OverlapSpec os(pr, ell, r);
    GraphParams params = GraphParams::gnp(static_cast<double>(n), p);

    std::map<int, long long> ell_counts = ell;
    Profile ell_profile(n, t, ell_counts);
    LogReal partial = expect_unordered(ell_profile, params, Model::gnp);
    FTerms ft = f_terms(os, params, partial);
    auto sf = shared_forbidden(os);

    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = n;
    j["t"] = t;
    j["n_id"] = os.n_id();
    j["n_tr"] = os.n_tr();
    j["r1"] = os.r1();
    j["eta"] = os.eta();
    j["lambda"] = os.lambda();
    j["g"] = sf.g;
    j["g_id"] = sf.g_id;
    j["g_tr"] = sf.g_tr;
    json ts = json::array();
    for (int x = 2; x <= t - 1 && x <= os.n_tr(); ++x)
        ts.push_back(json{{"x", x}, {"T", logreal_json(t_sum(os, x, params.q))}});
    j["T"] = ts;
    j["F1"] = logreal_json(ft.F1);
    j["F3"] = ft.F3;
    j["M1"] = ft.M1;
    j["M2"] = ft.M2;
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_simulate(int n, std::optional<double> p, std::optional<long long> m, int t,
                 long long samples, std::uint64_t seed, const std::string& hist_file,
                 std::ostream& out) {
    if (!p && !m) throw domain_error("simulate: need --p or --m");
    std::map<int, long long> hist;
    std::map<int, long long> alpha_hist;
    for (long long s = 0; s < samples; ++s) {
        std::uint64_t si = CounterRng::mix(seed + static_cast<std::uint64_t>(s));
        BitGraph g = m ? sample_gnm(n, *m, si) : sample_gnp(n, *p, si);
        int al = independence_number(g);
        ++alpha_hist[al];
        int bound = t > 0 ? t : al;
        ChiResult chi = chi_bounded(g, bound);
        if (!chi.exact) throw budget_exhausted("simulate: chi_bounded budget exhausted");
        ++hist[chi.chi];
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = n;
    if (p) j["p"] = *p;
    if (m) j["m"] = *m;
    j["t"] = t;
    j["samples"] = samples;
    j["seed"] = seed;
    json h = json::array();
    for (auto [chi, cnt] : hist) h.push_back(json{{"chi", chi}, {"count", cnt}});
    j["chi_hist"] = h;
    json ah = json::array();
    for (auto [al, cnt] : alpha_hist) ah.push_back(json{{"alpha", al}, {"count", cnt}});
    j["alpha_hist"] = ah;
    out << j.dump(2) << "\n";
    if (!hist_file.empty()) {
        std::ofstream os(hist_file);
        if (!os) throw domain_error("cannot open hist file: " + hist_file);
        os << "chi\tcount\n";
        for (auto [chi, cnt] : hist) os << chi << "\t" << cnt << "\n";
    }
    return 0;
}

int cmd_check_pair(const std::string& graph_file, const std::string& pi_file,
                   const std::string& pi2_file, std::optional<int> u_star_opt,
                   std::optional<int> a_opt, std::ostream& out) {
    std::ifstream gin(graph_file);
    if (!gin) throw domain_error("cannot open graph file: " + graph_file);
    BitGraph g = read_graph(gin);
    std::ifstream p1(pi_file), p2(pi2_file);
    if (!p1 || !p2) throw domain_error("cannot open partition file");
    OrderedPartition pi = read_partition(p1), pi2 = read_partition(p2);
    GraphParams params = GraphParams::gnp(std::max(3.0, static_cast<double>(g.n)), 0.5);
    long al = alpha(params);
    // desk-scale defaults, flagged as conventions in the output
    int u_star = u_star_opt.value_or(
        static_cast<int>(std::ceil(0.9 * static_cast<double>(al))));
    int a = a_opt.value_or(static_cast<int>(al) - 2);
    EventOptions opt{u_star, a, static_cast<int>(al)};
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = g.n;
    j["alpha"] = al;
    j["u_star"] = u_star;
    j["a"] = a;
    j["defaults_are_conventions"] = !(u_star_opt && a_opt);
    EventReport e1 = check_events(g, pi, opt), e2 = check_events(g, pi2, opt);
    j["events_pi"] = json{{"A", e1.A}, {"B", e1.B}, {"C", e1.C}, {"D", e1.D}};
    j["events_pi2"] = json{{"A", e2.A}, {"B", e2.B}, {"C", e2.C}, {"D", e2.D}};
    j["relevant"] = is_relevant(pi, pi2, static_cast<int>(al), g.n);
    OverlapSpec os = overlap_of(pi, pi2, g.n, static_cast<int>(al));
    auto sf = shared_forbidden(os);
    j["overlap"] = json{{"n_id", os.n_id()}, {"n_tr", os.n_tr()}, {"r1", os.r1()},
                        {"g", sf.g},         {"g_id", sf.g_id},   {"g_tr", sf.g_tr}};
    json labels = json::array();
    auto cls = classify_parts(pi, pi2, static_cast<int>(al));
    const char* names[] = {"identical", "scrambled", "exc_inside", "exc_contains", "exc_swap"};
    for (const auto& lab : cls)
        labels.push_back(json{{"label", names[static_cast<int>(lab.label)]},
                              {"cases_matched", lab.cases_matched}});
    j["part_labels"] = labels;
    out << j.dump(2) << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tamechroma: bounded colourings of dense random graphs"};
    app.require_subcommand(0, 1);
    bool show_constants = false;
    app.add_flag("--show-constants", show_constants, "print the constant-band table as JSON");

    auto* stats = app.add_subcommand("stats", "independent-set statistics");
    double s_n = 0, s_p = 0.5;
    long s_t = -1;
    bool s_json = false;
    stats->add_option("--n", s_n, "vertex count")->required();
    stats->add_option("--p", s_p, "edge probability");
    stats->add_option("--t", s_t, "set size (default alpha)");
    stats->add_flag("--json", s_json, "JSON output");

    auto* profile = app.add_subcommand("profile", "profile expectations");
    auto* expect = profile->add_subcommand("expect", "expected number of colourings");
    std::string pe_file, pe_model = "gnp";
    double pe_p = 0.5;
    double pe_m = -1;
    bool pe_json = false;
    expect->add_option("--file", pe_file, "profile file")->required();
    expect->add_option("--p", pe_p, "edge probability");
    expect->add_option("--m", pe_m, "edge count (gnm)");
    expect->add_option("--model", pe_model, "gnp or gnm")
        ->check(CLI::IsMember({"gnp", "gnm"}));
    expect->add_flag("--json", pe_json, "JSON output");

    auto* optimize = app.add_subcommand("optimize", "continuous maximizer and rounding");
    long long o_n = 0, o_k = 0;
    int o_t = 0;
    std::string o_emit;
    optimize->add_option("--n", o_n)->required();
    optimize->add_option("--k", o_k)->required();
    optimize->add_option("--t", o_t)->required();
    optimize->add_option("--emit", o_emit, "write the rounded profile to this file");

    auto* thresh = app.add_subcommand("threshold", "first-moment threshold");
    long long th_n = 0;
    int th_t = 0;
    bool th_exact = false;
    double th_p = 0.5;
    thresh->add_option("--n", th_n)->required();
    thresh->add_option("--t", th_t)->required();
    thresh->add_option("--p", th_p, "edge probability (exact mode)");
    thresh->add_flag("--exact", th_exact, "exact enumeration mode (n <= 60)");

    auto* limits = app.add_subcommand("limits", "certified limiting profile system");
    int l_i0 = 1;
    double l_x = 0.0;
    int l_s = -1;
    limits->add_option("--i0", l_i0)->required()->check(CLI::IsMember({1, 2}));
    limits->add_option("--x", l_x)->required();
    limits->add_option("--s", l_s, "also evaluate phi(s,x,i0) and the tail sums");

    auto* verify = app.add_subcommand("verify-positivity", "border-point certificate");
    std::string v_report;
    verify->add_option("--report", v_report, "write the certificate JSON here");

    auto* sm = app.add_subcommand("sm-terms", "second-moment term evaluators");
    std::string sm_spec;
    sm->add_option("--spec", sm_spec, "overlap spec JSON")->required();

    auto* simulate = app.add_subcommand("simulate", "sample graphs, exact chi_t histogram");
    int si_n = 0, si_t = 0;
    double si_p = -1;
    long long si_m = -1, si_samples = 100;
    std::uint64_t si_seed = 1;
    std::string si_hist;
    simulate->add_option("--n", si_n)->required();
    simulate->add_option("--p", si_p);
    simulate->add_option("--m", si_m);
    simulate->add_option("--t", si_t, "class-size bound (0: use alpha(G))");
    simulate->add_option("--samples", si_samples);
    simulate->add_option("--seed", si_seed);
    simulate->add_option("--hist", si_hist, "write chi histogram TSV here");

    auto* pair = app.add_subcommand("check-pair", "events and overlap of two partitions");
    std::string cp_graph, cp_pi, cp_pi2;
    int cp_ustar = -1, cp_a = -1;
    pair->add_option("--graph", cp_graph)->required();
    pair->add_option("--pi", cp_pi)->required();
    pair->add_option("--pi2", cp_pi2)->required();
    pair->add_option("--u-star", cp_ustar, "B/C/D size range lower end");
    pair->add_option("--a", cp_a, "B/C/D size range upper end");

    if (args.empty()) {
        err << app.help();
        return 64;
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 64;
    }

    try {
        if (show_constants) {
            out << constants_json().dump(2) << "\n";
            return 0;
        }
        if (stats->parsed())
            return cmd_stats(s_n, s_p, s_t >= 0 ? std::optional<long>(s_t) : std::nullopt,
                             s_json, out);
        if (profile->parsed() && expect->parsed())
            return cmd_profile_expect(pe_file, pe_p,
                                      pe_m >= 0 ? std::optional<double>(pe_m) : std::nullopt,
                                      pe_model, pe_json, out);
        if (optimize->parsed()) return cmd_optimize(o_n, o_k, o_t, o_emit, out);
        if (thresh->parsed()) return cmd_threshold(th_n, th_t, th_exact, th_p, out);
        if (limits->parsed())
            return cmd_limits(l_i0, l_x, l_s >= 0 ? std::optional<int>(l_s) : std::nullopt, out);
        if (verify->parsed()) return cmd_verify_positivity(v_report, out);
        if (sm->parsed()) return cmd_sm_terms(sm_spec, out);
        if (simulate->parsed())
            return cmd_simulate(si_n, si_p >= 0 ? std::optional<double>(si_p) : std::nullopt,
                                si_m >= 0 ? std::optional<long long>(si_m) : std::nullopt, si_t,
                                si_samples, si_seed, si_hist, out);
        if (pair->parsed())
            return cmd_check_pair(cp_graph, cp_pi, cp_pi2,
                                  cp_ustar >= 0 ? std::optional<int>(cp_ustar) : std::nullopt,
                                  cp_a >= 0 ? std::optional<int>(cp_a) : std::nullopt, out);
        err << app.help();
        return 64;
    } catch (const certification_error& e) {
        err << "certification failure: " << e.what() << "\n";
        return 2;
    } catch (const budget_exhausted& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const no_convergence& e) {
        err << "solver failure: " << e.what() << "\n";
        return 1;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace tamechroma
