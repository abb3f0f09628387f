// alignsim CLI: Monte Carlo experiment drivers for the binary-text alignment
// model, the exhaustive verification suite, and the parameter-condition
// report.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
// 3 infeasible sampling.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alignsim/align.hpp"
#include "alignsim/events.hpp"
#include "alignsim/experiments.hpp"
#include "alignsim/oracles.hpp"
#include "alignsim/rng.hpp"
#include "alignsim/sampling.hpp"

using namespace alignsim;
namespace exps = alignsim::experiments;

namespace {

struct CommonOpts {
    std::vector<long> sizes{128, 256, 512, 1024};
    long replicas = 1000;
    std::string s11 = "50";
    std::string eps = "2/5";
    std::string eps1 = "1/10";
    std::string q = "0";
    uint64_t seed = 1;
    int workers = 1;
    std::string out;
    std::string format = "csv";
    bool strict = false;
    long max_tries = 100000;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--sizes", o.sizes, "text lengths n (comma separated)")->delimiter(',');
    cmd->add_option("--replicas", o.replicas, "independent (X,Y) draws per size");
    cmd->add_option("--s11", o.s11, "score for an aligned pair of ones (rational)");
    cmd->add_option("--eps", o.eps, "epsilon for the typicality events (rational)");
    cmd->add_option("--eps1", o.eps1, "epsilon_1 for the event thresholds (rational)");
    cmd->add_option("--q", o.q, "gap penalty per unaligned symbol (rational)");
    cmd->add_option("--seed", o.seed, "master seed; replica streams derive from it");
    cmd->add_option("--workers", o.workers, "worker threads (results are invariant)");
    cmd->add_option("--out", o.out, "output directory")->required();
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--strict-paper-thresholds", o.strict,
                  "use the literal printed B3/B4 thresholds instead of mean-centred ones");
    cmd->add_option("--max-tries", o.max_tries, "rejection-sampling cap");
}

exps::ExperimentConfig make_config(const CommonOpts& o) {
    exps::ExperimentConfig cfg;
    cfg.sizes = o.sizes;
    cfg.replicas = o.replicas;
    cfg.scheme = ScoringScheme::paper(Rational::parse(o.s11));
    cfg.scheme.q = Rational::parse(o.q);
    cfg.params = EpsilonParams(Rational::parse(o.eps), Rational::parse(o.eps1));
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    cfg.out_dir = o.out;
    cfg.format = o.format == "json" ? exps::OutputFormat::json : exps::OutputFormat::csv;
    cfg.strict_paper_thresholds = o.strict;
    cfg.max_tries = o.max_tries;
    return cfg;
}

struct VerifyLog {
    nlohmann::json checks = nlohmann::json::array();

    int line(bool ok, const std::string& name, const std::string& detail) {
        std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                    detail.empty() ? "" : ": ", detail.c_str());
        checks.push_back({{"name", name}, {"pass", ok}, {"detail", detail}});
        return ok ? 0 : 1;
    }
};

// The verification suite behind the `verify` verb. Quick by default,
// acceptance-grade scales with --deep.
int run_verify(bool deep, uint64_t seed, const std::string& out_dir) {
    VerifyLog log;
    auto check_line = [&](bool ok, const std::string& name, const std::string& detail) {
        return log.line(ok, name, detail);
    };
    int failures = 0;

    // optimal_score against exhaustive enumeration
    {
        bool ok = true;
        long checked = 0;
        std::vector<Rational> s11s = {Rational(1), Rational(2), Rational(50)};
        const long max_len = deep ? 5 : 4;
        for (const Rational& s11 : s11s) {
            ScoringScheme scheme = ScoringScheme::paper(s11);
            for (long lx = 0; lx <= max_len && ok; ++lx) {
                for (long ly = 0; ly <= max_len && ok; ++ly) {
                    for (uint32_t mx = 0; mx < (1u << lx) && ok; ++mx) {
                        for (uint32_t my = 0; my < (1u << ly); ++my) {
                            std::vector<Bit> bx(lx), by(ly);
                            for (long i = 0; i < lx; ++i) bx[i] = (mx >> i) & 1;
                            for (long i = 0; i < ly; ++i) by[i] = (my >> i) & 1;
                            BinarySequence x(bx), y(by);
                            ++checked;
                            if (optimal_score(x, y, scheme) !=
                                oracles::brute_force_score(x, y, scheme)) {
                                ok = false;
                                break;
                            }
                        }
                    }
                }
            }
        }
        RngStream rng(seed, 1001);
        const long pairs = deep ? 500 : 120;
        const long nmax = deep ? 10 : 9;
        for (long t = 0; t < pairs && ok; ++t) {
            BinarySequence x = iid_sequence(static_cast<long>(rng.next_below(nmax + 1)), rng);
            BinarySequence y = iid_sequence(static_cast<long>(rng.next_below(nmax + 1)), rng);
            for (const Rational& s11 : s11s) {
                ScoringScheme scheme = ScoringScheme::paper(s11);
                ++checked;
                if (optimal_score(x, y, scheme) != oracles::brute_force_score(x, y, scheme)) {
                    ok = false;
                    break;
                }
            }
        }
        failures += check_line(ok, "dp-vs-brute-force", std::to_string(checked) + " cases");
    }

    // worked examples: the 6 -> 7 transfer, the profile-chain step, the
    // block-alignment statistics
    {
        bool ok = true;
        BinarySequence x = BinarySequence::parse("1011000001");
        BinarySequence y = BinarySequence::parse("10010101");
        ScoringScheme s1 = ScoringScheme::paper(Rational(1));
        ok = ok && optimal_score(x, y, s1) == Rational(6);
        ok = ok && transfer(x, {0, 0}) == BinarySequence::parse("1001100001");
        ok = ok && optimal_score(transfer(x, {0, 0}), y, s1) == Rational(7);

        BinarySequence x3 = BinarySequence::parse("0101000001100000");
        ok = ok && zero_block_profile(x3) == BlockProfile{2, 0, 0, 2};
        ok = ok && transfer(x3, {1, 0}) == BinarySequence::parse("0010100000110000");
        ok = ok && zero_block_profile(transfer(x3, {1, 0})) == BlockProfile{1, 1, 1, 1};
        failures += check_line(ok, "worked-examples", "");
    }

    // exact block-count means against full enumeration
    {
        bool ok = true;
        const int nmax = deep ? 16 : 12;
        for (int n = 1; n <= nmax && ok; ++n) {
            oracles::ProfileStats st = oracles::exact_profile_stats(n);
            ok = ok && st.mean_n1 == expected_block_count(n, 1);
            if (n >= 2) ok = ok && st.mean_n2 == expected_block_count(n, 2);
            if (n >= 4) ok = ok && st.mean_n4 == expected_block_count(n, 4);
            if (n >= 5) ok = ok && st.mean_n5 == expected_block_count(n, 5);
        }
        failures += check_line(ok, "block-count-moments", "n <= " + std::to_string(nmax));
    }

    // class-size ratios along e
    {
        bool ok = true;
        long pairs = 0;
        const int nmax = deep ? 14 : 10;
        for (int n = 7; n <= nmax; ++n) {
            auto sweep = oracles::profile_count_ratio(n);
            pairs += sweep.pairs_checked;
            ok = ok && sweep.ok();
        }
        failures += check_line(ok, "profile-count-ratio", std::to_string(pairs) + " class pairs");
    }

    // exact chain uniformity
    {
        bool ok = true;
        long cases = 0;
        const int nmax = deep ? 14 : 10;
        for (int n = 7; n <= nmax; ++n) {
            auto sweep = oracles::chain_uniformity_sweep(n, 2);
            cases += sweep.cases_checked;
            ok = ok && sweep.ok();
        }
        failures += check_line(ok, "chain-uniformity", std::to_string(cases) + " (profile,k) cases");
    }

    // V^k entropy bound
    {
        bool ok = true;
        for (int k = 1; k <= 40 && ok; ++k) {
            for (const char* e : {"1/10", "1/5", "2/5"}) {
                auto rep = oracles::count_Vk_and_bound(k, Rational::parse(e));
                if (!rep.holds.has_value() || !*rep.holds) {
                    ok = false;
                    break;
                }
            }
        }
        failures += check_line(ok, "vk-entropy-bound", "k <= 40, eps in {0.1,0.2,0.4}");
    }

    // variance-transfer inequality on random admissible instances
    {
        bool ok = true;
        RngStream rng(seed, 2002);
        const long trials = deep ? 1000 : 200;
        for (long t = 0; t < trials && ok; ++t) {
            auto inst = oracles::random_variance_transfer_instance(rng);
            auto rep = oracles::verify_variance_transfer(inst.f, inst.B, inst.c, inst.m);
            ok = rep.preconditions_ok && rep.holds;
        }
        failures += check_line(ok, "variance-transfer", std::to_string(trials) + " instances");
    }

    // log-Lipschitz variance bound for uniform laws on wide intervals
    {
        bool ok = true;
        for (long n : {1L, 4L, 16L, 64L, 256L, 1024L}) {
            long diam = static_cast<long>(std::ceil(4.0 * 0.6931471805599453 * std::sqrt(n))) + 1;
            auto W = oracles::FiniteDistribution::uniform_on(0, diam);
            auto rep = oracles::verify_log_lipschitz_variance(W, Rational(1), n);
            ok = ok && rep.preconditions_ok.value_or(false) && rep.holds.value_or(false);
        }
        failures += check_line(ok, "log-lipschitz-variance", "uniform W, kappa=1");
    }

    // concentration box
    {
        const int n = deep ? 16 : 14;
        auto st = oracles::exact_profile_stats(n);
        bool ok = st.p_box >= Rational(1, 5);
        failures += check_line(ok, "profile-box",
                               "P(box) = " + st.p_box.fraction_string() + " at n=" + std::to_string(n));
    }

    std::printf("%s\n", failures == 0 ? "verify: all oracle checks passed"
                                      : "verify: oracle checks FAILED");
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        nlohmann::json report = {{"artifact", "alignsim"},
                                 {"verb", "verify"},
                                 {"deep", deep},
                                 {"seed", seed},
                                 {"pass", failures == 0},
                                 {"checks", log.checks}};
        std::ofstream f(std::filesystem::path(out_dir) / "verify.json", std::ios::binary);
        f << report.dump(2) << "\n";
    }
    return failures == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"alignsim: alignment-score fluctuation simulator for binary texts"};
    app.require_subcommand(1);

    CommonOpts opts;
    long steps = 40;
    std::string window_exponent = "1/10";
    std::string slope_rate = "1/100";
    bool deep = false;
    std::string vp_eps = "2/5", vp_eps1 = "1/10", vp_s11 = "50";

    CLI::App* variance = app.add_subcommand("variance", "sample variance of the optimal score vs n");
    add_common(variance, opts);

    CLI::App* delta = app.add_subcommand("delta-bias", "exact conditional law of the transfer move");
    add_common(delta, opts);

    CLI::App* slope = app.add_subcommand("chain-slope", "score growth along the block-profile chain");
    add_common(slope, opts);
    slope->add_option("--steps", steps, "transfer moves per trajectory");
    slope->add_option("--window-exponent", window_exponent, "window length exponent (rational)");
    slope->add_option("--rate", slope_rate, "required score rate per step (rational)");

    CLI::App* events = app.add_subcommand("events", "frequencies of the typicality events");
    add_common(events, opts);

    CLI::App* verify = app.add_subcommand("verify", "run the exhaustive oracle suite");
    verify->add_flag("--deep", deep, "acceptance-grade sizes (slower)");
    verify->add_option("--seed", opts.seed, "seed for the randomized sweeps");
    verify->add_option("--out", opts.out, "write verify.json with per-check results");

    CLI::App* vparams = app.add_subcommand("validate-params", "evaluate the epsilon conditions");
    vparams->add_option("--eps", vp_eps, "epsilon (rational)");
    vparams->add_option("--eps1", vp_eps1, "epsilon_1 (rational)");
    vparams->add_option("--s11", vp_s11, "score for an aligned pair of ones (rational)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return 0;
        }
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(verify)) return run_verify(deep, opts.seed, opts.out);

        if (app.got_subcommand(vparams)) {
            EpsilonParams params(Rational::parse(vp_eps), Rational::parse(vp_eps1));
            ConditionLedger ledger = validate_parameters(params, Rational::parse(vp_s11));
            for (const auto& c : ledger.conditions) {
                const char* verdict = !c.holds.has_value() ? "UNDECIDED"
                                      : *c.holds           ? "holds"
                                                           : "fails";
                std::printf("%-16s %-9s %s\n", c.name.c_str(), verdict, c.detail.c_str());
            }
            std::printf("overall: %s\n", ledger.overall() ? "all conditions hold"
                                                          : "not all conditions hold");
            return 0;
        }

        exps::ExperimentConfig cfg = make_config(opts);
        if (app.got_subcommand(variance)) {
            auto res = exps::estimate_variance_curve(cfg);
            exps::write_outputs(cfg, "variance", res.to_csv(), res.summary());
        } else if (app.got_subcommand(delta)) {
            auto res = exps::estimate_delta_bias(cfg);
            exps::write_outputs(cfg, "delta-bias", res.to_csv(), res.summary());
        } else if (app.got_subcommand(slope)) {
            cfg.steps = steps;
            cfg.window_exponent = Rational::parse(window_exponent);
            cfg.slope_rate = Rational::parse(slope_rate);
            auto res = exps::chain_slope_experiment(cfg, cfg.steps);
            exps::write_outputs(cfg, "chain-slope", res.to_csv(), res.summary());
        } else if (app.got_subcommand(events)) {
            auto res = exps::event_frequency_experiment(cfg);
            exps::write_outputs(cfg, "events", res.to_csv(), res.summary());
        }
        return 0;
    } catch (const InfeasibleProfileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
