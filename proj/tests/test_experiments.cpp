#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "alignsim/experiments.hpp"

using namespace alignsim;
using namespace alignsim::experiments;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.sizes = {32, 64};
    cfg.replicas = 24;
    cfg.seed = 11;
    cfg.workers = 1;
    return cfg;
}

// exact P(|ones - n/2| <= eps n / 16) for one Bernoulli(1/2) text
Rational exact_b0_single(long n, const Rational& eps) {
    Rational bound = eps * Rational(n, 16);
    BigInt mass;
    for (long k = 0; k <= n; ++k) {
        Rational dev = (Rational(k) - Rational(n, 2)).abs();
        if (dev <= bound)
            mass += BigInt::binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    }
    return Rational(mass, BigInt::pow2(static_cast<unsigned>(n)));
}

} // namespace

TEST_CASE("variance estimate at n=1 matches the exact enumeration value") {
    // L_1 at s11=1: outcomes (0,0),(1,1) score 1 and (0,1),(1,0) score 0,
    // so Var = 1/4 exactly
    ExperimentConfig cfg;
    cfg.sizes = {1};
    cfg.replicas = 40000;
    cfg.scheme = ScoringScheme::paper(Rational(1));
    cfg.seed = 5;
    cfg.workers = 2;
    VarianceCurveResult res = estimate_variance_curve(cfg);
    REQUIRE(res.points.size() == 1);
    const VariancePoint& p = res.points[0];
    REQUIRE(p.var_defined);
    REQUIRE(p.var_stderr.has_value());
    // sd of the sample variance of R Bernoulli(1/2) draws is
    // sqrt(R(R-1)/8)/R^2 * R/(R-1), about 1/(sqrt(8) R); the jackknife SE is
    // not usable here because the first-order term vanishes at p = 1/2
    double sd = 1.0 / (std::sqrt(8.0) * static_cast<double>(cfg.replicas));
    double err = std::abs(p.var.to_double() - 0.25);
    CHECK(err <= 5 * sd);
    CHECK(std::abs(p.mean.to_double() - 0.5) <= 0.02);
}

TEST_CASE("variance estimate with one replica is flagged undefined") {
    ExperimentConfig cfg;
    cfg.sizes = {8};
    cfg.replicas = 1;
    cfg.seed = 5;
    VarianceCurveResult res = estimate_variance_curve(cfg);
    CHECK(!res.points[0].var_defined);
    CHECK(!res.points[0].var_stderr.has_value());
    CHECK(!res.fitted_slope.has_value());
    // the CSV still has a full row with empty cells
    CHECK(res.to_csv().find("8,1,") != std::string::npos);
}

TEST_CASE("experiments are worker-count invariant byte for byte") {
    ExperimentConfig a = small_config();
    ExperimentConfig b = small_config();
    b.workers = 8;

    CHECK(estimate_variance_curve(a).to_csv() == estimate_variance_curve(b).to_csv());
    CHECK(estimate_delta_bias(a).to_csv() == estimate_delta_bias(b).to_csv());
    CHECK(event_frequency_experiment(a).to_csv() == event_frequency_experiment(b).to_csv());
    CHECK(chain_slope_experiment(a, 8).to_csv() == chain_slope_experiment(b, 8).to_csv());
}

TEST_CASE("different seeds change the draws") {
    ExperimentConfig a = small_config();
    ExperimentConfig b = small_config();
    b.seed = 12;
    CHECK(estimate_variance_curve(a).to_csv() != estimate_variance_curve(b).to_csv());
}

TEST_CASE("delta bias rows carry exact probability vectors") {
    ExperimentConfig cfg;
    cfg.sizes = {96};
    cfg.replicas = 16;
    cfg.seed = 21;
    DeltaBiasResult res = estimate_delta_bias(cfg);
    REQUIRE(res.rows.size() == 16);
    for (const auto& row : res.rows) {
        CHECK(row.pmf.p_plus + row.pmf.p_minus + row.pmf.p_zero == Rational(1));
        CHECK(row.pmf.p_minus >= Rational(0));
    }
    REQUIRE(res.aggregates.size() == 1);
    Rational sum(0);
    for (const auto& row : res.rows) sum += row.pmf.p_plus;
    CHECK(res.aggregates[0].mean_p_plus == sum / Rational(16));

    // outside the large-s11 regime the report is still well formed; no
    // threshold is claimed there
    cfg.scheme = ScoringScheme::paper(Rational(1));
    DeltaBiasResult weak = estimate_delta_bias(cfg);
    CHECK(weak.rows.size() == 16);
    for (const auto& row : weak.rows)
        CHECK(row.pmf.p_plus + row.pmf.p_minus + row.pmf.p_zero == Rational(1));
}

TEST_CASE("chain slope trajectories move by at most one per step") {
    ExperimentConfig cfg;
    cfg.sizes = {200};
    cfg.replicas = 1;
    cfg.seed = 31;
    ChainSlopeResult res = chain_slope_experiment(cfg, 15);
    REQUIRE(res.trajectories.size() == 1);
    const auto& t = res.trajectories[0];
    CHECK(t.window_len == 2); // ceil(200^(1/10))
    for (size_t k = 1; k < t.scores.size(); ++k) {
        Rational d = t.scores[k] - t.scores[k - 1];
        CHECK(d >= Rational(-1));
        CHECK(d <= Rational(1));
        CHECK(d.is_integer());
    }
    if (t.windows_total > 0) {
        REQUIRE(t.fraction.has_value());
        CHECK(*t.fraction >= Rational(0));
        CHECK(*t.fraction <= Rational(1));
    }
}

TEST_CASE("chain slope with zero steps has no windows") {
    ExperimentConfig cfg;
    cfg.sizes = {64};
    cfg.replicas = 1;
    cfg.seed = 32;
    ChainSlopeResult res = chain_slope_experiment(cfg, 0);
    CHECK(res.trajectories[0].windows_total == 0);
    CHECK(!res.trajectories[0].fraction.has_value());
}

TEST_CASE("event frequencies live in [0,1] with covering intervals") {
    ExperimentConfig cfg;
    cfg.sizes = {64};
    cfg.replicas = 40;
    cfg.seed = 41;
    EventFrequencyResult res = event_frequency_experiment(cfg);
    CHECK(res.cells.size() == 10);
    for (const auto& c : res.cells) {
        double f = static_cast<double>(c.count) / c.replicas;
        CHECK(c.ci_low >= 0.0);
        CHECK(c.ci_high <= 1.0);
        CHECK(c.ci_low <= f + 1e-12);
        CHECK(c.ci_high >= f - 1e-12);
    }
}

TEST_CASE("B0 frequency tracks the exact binomial mass") {
    // the per-text acceptance probability is an exact binomial sum; the
    // two-text event then has probability p^2
    const Rational eps(2, 5);
    std::vector<long> sizes = {128, 256, 512, 1024};
    std::vector<Rational> targets;
    for (long n : sizes) {
        Rational p = exact_b0_single(n, eps);
        targets.push_back(p * p);
    }
    for (size_t i = 0; i + 1 < targets.size(); ++i) CHECK(targets[i] < targets[i + 1]);

    ExperimentConfig cfg;
    cfg.sizes = sizes;
    cfg.replicas = 200;
    cfg.seed = 43;
    cfg.workers = 4;
    EventFrequencyResult res = event_frequency_experiment(cfg);
    for (size_t i = 0; i < sizes.size(); ++i) {
        double target = targets[i].to_double();
        double freq = 0;
        for (const auto& c : res.cells)
            if (c.n == sizes[i] && c.event == "B0")
                freq = static_cast<double>(c.count) / c.replicas;
        double sigma = std::sqrt(target * (1 - target) / cfg.replicas);
        CHECK(std::abs(freq - target) <= 4 * sigma + 1e-9);
    }
}

TEST_CASE("write_outputs emits manifest plus table") {
    namespace fs = std::filesystem;
    fs::path dir = fs::path("exp_out_test");
    fs::remove_all(dir);

    ExperimentConfig cfg = small_config();
    cfg.out_dir = dir.string();
    VarianceCurveResult res = estimate_variance_curve(cfg);
    write_outputs(cfg, "variance", res.to_csv(), res.summary());

    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "variance.csv"));
    std::ifstream in(dir / "manifest.json");
    nlohmann::json manifest = nlohmann::json::parse(in);
    CHECK(manifest["artifact"] == "alignsim");
    CHECK(manifest["verb"] == "variance");
    CHECK(manifest["config"]["replicas"] == 24);
    CHECK(manifest["config"]["scheme"]["s11"] == "50");
    CHECK(manifest.contains("created_utc"));

    cfg.format = OutputFormat::json;
    write_outputs(cfg, "variance", res.to_csv(), res.summary());
    CHECK(fs::exists(dir / "variance.json"));
    std::ifstream jin(dir / "variance.json");
    nlohmann::json rows = nlohmann::json::parse(jin);
    CHECK(rows["rows"].size() == res.points.size());
    CHECK(rows["rows"][0].contains("var_over_n"));

    fs::remove_all(dir);
}

TEST_CASE("format_double emits 12 significant digits") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(1234567.0) == "1234567");
}
