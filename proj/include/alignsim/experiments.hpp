// Monte Carlo experiment drivers: the variance curve, the transfer-move bias,
// the chain slope, and event frequencies, plus seeded parallel execution and
// CSV/JSON persistence. Identical configs produce byte-identical CSV at any
// worker count: every replica owns a stream derived from (seed, verb, n,
// replica) and aggregation is ordered by replica index.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alignsim/events.hpp"
#include "alignsim/sequence.hpp"

namespace alignsim::experiments {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
    std::vector<long> sizes{128, 256, 512, 1024};
    long replicas = 1000;
    ScoringScheme scheme = ScoringScheme::paper();
    EpsilonParams params;
    uint64_t seed = 1;
    int workers = 1;
    std::string out_dir;
    OutputFormat format = OutputFormat::csv;
    bool strict_paper_thresholds = false;
    long max_tries = 100000;

    // chain-slope knobs (flags for exploration)
    long steps = 40;
    Rational window_exponent{1, 10};
    Rational slope_rate{1, 100};

    nlohmann::json to_json() const;
};

// Runs fn(0..count-1) across the given number of threads; any exception is
// rethrown on the caller. Work is indexed, so results land in order.
void parallel_for(long count, int workers, const std::function<void(long)>& fn);

// ---- variance ----

struct VariancePoint {
    long n = 0, replicas = 0;
    Rational mean;
    bool var_defined = false;
    Rational var, var_over_n;
    std::optional<double> var_stderr; // delete-one jackknife, needs >= 3 replicas
};

struct VarianceCurveResult {
    std::vector<VariancePoint> points;
    std::optional<double> fitted_slope; // least squares of Var vs n
    std::string to_csv() const;
    nlohmann::json summary() const;
};

VarianceCurveResult estimate_variance_curve(const ExperimentConfig& cfg);

// ---- delta bias ----

struct DeltaBiasRow {
    long n = 0, replica = 0;
    DeltaDistribution pmf{Rational(0), Rational(1), Rational(0)};
    bool event_A = false;
    long rejections = 0; // texts redrawn until a 5-block and a 1-block exist
};

struct DeltaBiasAggregate {
    long n = 0, replicas = 0;
    Rational freq_A, mean_p_plus, mean_p_minus, mean_expected;
    long total_rejections = 0;
};

struct DeltaBiasResult {
    std::vector<DeltaBiasRow> rows;
    std::vector<DeltaBiasAggregate> aggregates;
    std::string to_csv() const;
    nlohmann::json summary() const;
};

DeltaBiasResult estimate_delta_bias(const ExperimentConfig& cfg);

// ---- chain slope ----

struct ChainSlopeTrajectory {
    long n = 0;
    long steps_requested = 0;
    bool stopped_early = false;
    std::vector<Rational> scores; // scores[k] = L at chain step k
    long window_len = 0;          // ceil(n^window_exponent), exact
    long windows_total = 0, windows_ok = 0;
    std::optional<Rational> fraction;
};

struct ChainSlopeResult {
    std::vector<ChainSlopeTrajectory> trajectories;
    std::string to_csv() const;
    nlohmann::json summary() const;
};

// One trajectory per size (the CSV schema is per-step); extra replicas would
// need a different layout, so the driver runs exactly one chain per n.
ChainSlopeResult chain_slope_experiment(const ExperimentConfig& cfg, long steps);

// ---- event frequencies ----

struct EventFrequencyCell {
    long n = 0;
    std::string event;
    long count = 0, replicas = 0;
    double ci_low = 0, ci_high = 0; // Wilson, z = 1.96
};

struct EventFrequencyResult {
    std::vector<EventFrequencyCell> cells;
    std::string to_csv() const;
    nlohmann::json summary() const;
};

EventFrequencyResult event_frequency_experiment(const ExperimentConfig& cfg);

// ---- persistence ----

// Writes DIR/manifest.json plus DIR/<verb>.csv or DIR/<verb>.json. The
// manifest carries the config echo, artifact version and a timestamp; CSV
// files carry no timestamps so reruns compare byte-for-byte.
void write_outputs(const ExperimentConfig& cfg, const std::string& verb,
                   const std::string& csv, const nlohmann::json& summary);

std::string format_double(double v); // %.12g

} // namespace alignsim::experiments
