#include "alignsim/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "alignsim/align.hpp"
#include "alignsim/sampling.hpp"

namespace alignsim::experiments {

namespace {

enum VerbSalt : uint64_t {
    kVariance = 1,
    kDeltaBias = 2,
    kChainSlope = 3,
    kEvents = 4,
};

uint64_t stream_id(VerbSalt verb, long n, long replica) {
    return (static_cast<uint64_t>(verb) << 56) ^ (static_cast<uint64_t>(n) << 28) ^
           static_cast<uint64_t>(replica);
}

std::string dec(const Rational& r) { return r.decimal_string(12); }

// Wilson score interval, z = 1.96.
std::pair<double, double> wilson(long count, long total) {
    if (total == 0) return {0.0, 1.0};
    const double z = 1.96, z2 = z * z;
    double p = static_cast<double>(count) / static_cast<double>(total);
    double nn = static_cast<double>(total);
    double denom = 1.0 + z2 / nn;
    double center = (p + z2 / (2 * nn)) / denom;
    double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

nlohmann::json ExperimentConfig::to_json() const {
    return {
        {"sizes", sizes},
        {"replicas", replicas},
        {"scheme",
         {{"s00", scheme.s00.fraction_string()},
          {"s01", scheme.s01.fraction_string()},
          {"s10", scheme.s10.fraction_string()},
          {"s11", scheme.s11.fraction_string()},
          {"q", scheme.q.fraction_string()}}},
        {"eps", params.eps.fraction_string()},
        {"eps1", params.eps1.fraction_string()},
        {"seed", seed},
        {"workers", workers},
        {"format", format == OutputFormat::csv ? "csv" : "json"},
        {"strict_paper_thresholds", strict_paper_thresholds},
        {"max_tries", max_tries},
        {"steps", steps},
        {"window_exponent", window_exponent.fraction_string()},
        {"slope_rate", slope_rate.fraction_string()},
    };
}

void parallel_for(long count, int workers, const std::function<void(long)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto body = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int t = std::min<long>(workers, count);
    pool.reserve(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// ---- variance ----

VarianceCurveResult estimate_variance_curve(const ExperimentConfig& cfg) {
    ScaledScheme ss = ScaledScheme::from(cfg.scheme);
    VarianceCurveResult out;
    for (long n : cfg.sizes) {
        std::vector<int64_t> scores(static_cast<size_t>(cfg.replicas));
        parallel_for(cfg.replicas, cfg.workers, [&](long r) {
            RngStream rng(cfg.seed, stream_id(kVariance, n, r));
            BinarySequence x = iid_sequence(n, rng);
            BinarySequence y = iid_sequence(n, rng);
            scores[static_cast<size_t>(r)] = dp::score(x, y, ss);
        });
        const long R = cfg.replicas;
        BigInt s1, s2;
        for (int64_t v : scores) {
            s1 += BigInt(v);
            s2 += BigInt(v) * BigInt(v);
        }
        VariancePoint pt;
        pt.n = n;
        pt.replicas = R;
        pt.mean = Rational(s1, BigInt(R) * ss.scale);
        if (R >= 2) {
            pt.var_defined = true;
            pt.var = Rational(BigInt(R) * s2 - s1 * s1,
                              BigInt(R) * BigInt(R - 1) * ss.scale * ss.scale);
            pt.var_over_n = pt.var / Rational(n);
        }
        if (R >= 3) {
            // delete-one jackknife on the sample variance
            long double S1 = s1.to_long_double(), S2 = s2.to_long_double();
            long double Rd = static_cast<long double>(R);
            std::vector<long double> theta(static_cast<size_t>(R));
            long double theta_bar = 0;
            for (long i = 0; i < R; ++i) {
                long double xi = static_cast<long double>(scores[static_cast<size_t>(i)]);
                long double s1i = S1 - xi, s2i = S2 - xi * xi;
                theta[static_cast<size_t>(i)] = (s2i - s1i * s1i / (Rd - 1)) / (Rd - 2);
                theta_bar += theta[static_cast<size_t>(i)];
            }
            theta_bar /= Rd;
            long double acc = 0;
            for (long double t : theta) acc += (t - theta_bar) * (t - theta_bar);
            long double scale2 = ss.scale.to_long_double() * ss.scale.to_long_double();
            pt.var_stderr = static_cast<double>(std::sqrt((Rd - 1) / Rd * acc) / scale2);
        }
        out.points.push_back(std::move(pt));
    }
    // least-squares slope of Var against n
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : out.points)
        if (p.var_defined) pts.emplace_back(static_cast<double>(p.n), p.var.to_double());
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [a, b] : pts) {
            sx += a;
            sy += b;
            sxx += a * a;
            sxy += a * b;
        }
        double k = static_cast<double>(pts.size());
        out.fitted_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    }
    return out;
}

std::string VarianceCurveResult::to_csv() const {
    std::string csv =
        "n,replicas,mean_score,var_score,var_stderr,var_over_n,"
        "mean_score_exact,var_score_exact,var_over_n_exact\n";
    for (const auto& p : points) {
        csv += std::to_string(p.n) + "," + std::to_string(p.replicas) + "," + dec(p.mean) + ",";
        csv += p.var_defined ? dec(p.var) : "";
        csv += ",";
        csv += p.var_stderr ? format_double(*p.var_stderr) : "";
        csv += ",";
        csv += p.var_defined ? dec(p.var_over_n) : "";
        csv += "," + p.mean.fraction_string() + ",";
        csv += p.var_defined ? p.var.fraction_string() : "";
        csv += ",";
        csv += p.var_defined ? p.var_over_n.fraction_string() : "";
        csv += "\n";
    }
    return csv;
}

nlohmann::json VarianceCurveResult::summary() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
        pts.push_back({{"n", p.n},
                       {"mean", p.mean.fraction_string()},
                       {"var", p.var_defined ? nlohmann::json(p.var.fraction_string()) : nlohmann::json(nullptr)},
                       {"var_over_n", p.var_defined ? nlohmann::json(dec(p.var_over_n)) : nlohmann::json(nullptr)}});
    }
    return {{"points", pts},
            {"fitted_slope", fitted_slope ? nlohmann::json(*fitted_slope) : nlohmann::json(nullptr)}};
}

// ---- delta bias ----

DeltaBiasResult estimate_delta_bias(const ExperimentConfig& cfg) {
    DeltaBiasResult out;
    const Rational up_threshold = Rational(31, 128) - cfg.params.eps1;
    const Rational down_threshold = Rational(1, 32) + cfg.params.eps1;
    for (long n : cfg.sizes) {
        std::vector<DeltaBiasRow> rows(static_cast<size_t>(cfg.replicas));
        parallel_for(cfg.replicas, cfg.workers, [&](long r) {
            RngStream rng(cfg.seed, stream_id(kDeltaBias, n, r));
            DeltaBiasRow row;
            row.n = n;
            row.replica = r;
            BinarySequence x, y;
            for (long tries = 0;; ++tries) {
                if (tries >= cfg.max_tries)
                    throw InfeasibleProfileError("delta-bias: no eligible text within max_tries");
                x = iid_sequence(n, rng);
                y = iid_sequence(n, rng);
                BlockProfile prof = zero_block_profile(x);
                if (prof.n5 >= 1 && prof.n1 >= 1) break;
                ++row.rejections;
            }
            row.pmf = delta_distribution_exact(x, y, cfg.scheme);
            row.event_A = row.pmf.p_plus >= up_threshold && row.pmf.p_minus <= down_threshold;
            rows[static_cast<size_t>(r)] = std::move(row);
        });
        DeltaBiasAggregate agg;
        agg.n = n;
        agg.replicas = cfg.replicas;
        long countA = 0;
        Rational sum_plus(0), sum_minus(0), sum_expected(0);
        for (const auto& row : rows) {
            countA += row.event_A ? 1 : 0;
            sum_plus += row.pmf.p_plus;
            sum_minus += row.pmf.p_minus;
            sum_expected += row.pmf.mean();
            agg.total_rejections += row.rejections;
        }
        agg.freq_A = Rational(countA, cfg.replicas);
        agg.mean_p_plus = sum_plus / Rational(cfg.replicas);
        agg.mean_p_minus = sum_minus / Rational(cfg.replicas);
        agg.mean_expected = sum_expected / Rational(cfg.replicas);
        out.aggregates.push_back(std::move(agg));
        for (auto& row : rows) out.rows.push_back(std::move(row));
    }
    return out;
}

std::string DeltaBiasResult::to_csv() const {
    std::string csv =
        "n,replica,p_plus,p_minus,p_zero,expected_delta,event_A,"
        "p_plus_exact,p_minus_exact,p_zero_exact,expected_delta_exact\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.n) + "," + std::to_string(r.replica) + ",";
        csv += dec(r.pmf.p_plus) + "," + dec(r.pmf.p_minus) + "," + dec(r.pmf.p_zero) + ",";
        csv += dec(r.pmf.mean()) + "," + (r.event_A ? "1" : "0") + ",";
        csv += r.pmf.p_plus.fraction_string() + "," + r.pmf.p_minus.fraction_string() + ",";
        csv += r.pmf.p_zero.fraction_string() + "," + r.pmf.mean().fraction_string() + "\n";
    }
    return csv;
}

nlohmann::json DeltaBiasResult::summary() const {
    nlohmann::json aggs = nlohmann::json::array();
    for (const auto& a : aggregates) {
        aggs.push_back({{"n", a.n},
                        {"replicas", a.replicas},
                        {"freq_A", a.freq_A.fraction_string()},
                        {"mean_p_plus", a.mean_p_plus.fraction_string()},
                        {"mean_p_minus", a.mean_p_minus.fraction_string()},
                        {"mean_expected_delta", a.mean_expected.fraction_string()},
                        {"total_rejections", a.total_rejections}});
    }
    return {{"aggregates", aggs}};
}

// ---- chain slope ----

namespace {

// smallest w >= 1 with w^q >= n^p, i.e. ceil of n^(p/q) without floating point
long exact_ceil_power(long n, const Rational& exponent) {
    if (n <= 1) return 1;
    const long long p = exponent.num().to_int64();
    const long long q = exponent.den().to_int64();
    if (p <= 0) return 1;
    BigInt target(1);
    for (long long i = 0; i < p; ++i) target *= BigInt(n);
    for (long w = 1;; ++w) {
        BigInt wq(1);
        for (long long i = 0; i < q; ++i) wq *= BigInt(w);
        if (wq >= target) return w;
    }
}

} // namespace

ChainSlopeResult chain_slope_experiment(const ExperimentConfig& cfg, long steps) {
    ScaledScheme ss = ScaledScheme::from(cfg.scheme);
    ChainSlopeResult out;
    for (long n : cfg.sizes) {
        RngStream rng(cfg.seed, stream_id(kChainSlope, n, 0));
        BinarySequence x0 = iid_sequence(n, rng);
        BinarySequence y = iid_sequence(n, rng);
        ChainTrajectory traj = chain_trajectory(x0, steps, rng);

        ChainSlopeTrajectory t;
        t.n = n;
        t.steps_requested = steps;
        t.stopped_early = traj.stopped_early;
        std::vector<int64_t> raw(traj.states.size());
        parallel_for(static_cast<long>(traj.states.size()), cfg.workers, [&](long k) {
            raw[static_cast<size_t>(k)] = dp::score(traj.states[static_cast<size_t>(k)], y, ss);
        });
        for (int64_t v : raw) t.scores.push_back(ss.unscale(v));

        t.window_len = exact_ceil_power(n, cfg.window_exponent);
        const long T = static_cast<long>(t.scores.size()) - 1;
        for (long i = 0; i <= T; ++i) {
            for (long j = i + t.window_len; j <= T; ++j) {
                ++t.windows_total;
                if (t.scores[static_cast<size_t>(j)] - t.scores[static_cast<size_t>(i)] >=
                    cfg.slope_rate * Rational(j - i))
                    ++t.windows_ok;
            }
        }
        if (t.windows_total > 0) t.fraction = Rational(t.windows_ok, t.windows_total);
        out.trajectories.push_back(std::move(t));
    }
    return out;
}

std::string ChainSlopeResult::to_csv() const {
    std::string csv = "n,step,score,delta,score_exact,delta_exact\n";
    for (const auto& t : trajectories) {
        for (size_t k = 0; k < t.scores.size(); ++k) {
            csv += std::to_string(t.n) + "," + std::to_string(k) + "," + dec(t.scores[k]) + ",";
            if (k > 0) csv += dec(t.scores[k] - t.scores[k - 1]);
            csv += "," + t.scores[k].fraction_string() + ",";
            if (k > 0) csv += (t.scores[k] - t.scores[k - 1]).fraction_string();
            csv += "\n";
        }
    }
    return csv;
}

nlohmann::json ChainSlopeResult::summary() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : trajectories) {
        arr.push_back({{"n", t.n},
                       {"steps_requested", t.steps_requested},
                       {"steps_taken", static_cast<long>(t.scores.size()) - 1},
                       {"stopped_early", t.stopped_early},
                       {"window_len", t.window_len},
                       {"windows_total", t.windows_total},
                       {"windows_ok", t.windows_ok},
                       {"fraction", t.fraction ? nlohmann::json(t.fraction->fraction_string())
                                               : nlohmann::json(nullptr)}});
    }
    return {{"trajectories", arr}};
}

// ---- event frequencies ----

EventFrequencyResult event_frequency_experiment(const ExperimentConfig& cfg) {
    EventFrequencyResult out;
    static const char* kEvents10[] = {"B0", "B1", "B2", "B3", "B4", "C", "D", "E", "F", "A"};
    for (long n : cfg.sizes) {
        std::vector<std::array<bool, 10>> flags(static_cast<size_t>(cfg.replicas));
        parallel_for(cfg.replicas, cfg.workers, [&](long r) {
            RngStream rng(cfg.seed, stream_id(kEvents, n, r));
            BinarySequence x = iid_sequence(n, rng);
            BinarySequence y = iid_sequence(n, rng);
            CheckOptions opt;
            opt.strict_paper_thresholds = cfg.strict_paper_thresholds;
            EventReport rep = check_events(x, y, cfg.scheme, cfg.params, opt);
            auto& f = flags[static_cast<size_t>(r)];
            f = {rep.B0.is_true(),
                 rep.B1.is_true(),
                 rep.B2_derived.value_or(false),
                 rep.B3.is_true(),
                 rep.B4.is_true(),
                 rep.C.is_true(),
                 rep.D.is_true(),
                 rep.E.is_true(),
                 rep.F.is_true(),
                 rep.A.is_true()};
        });
        for (int e = 0; e < 10; ++e) {
            EventFrequencyCell cell;
            cell.n = n;
            cell.event = kEvents10[e];
            cell.replicas = cfg.replicas;
            for (const auto& f : flags) cell.count += f[static_cast<size_t>(e)] ? 1 : 0;
            auto [lo, hi] = wilson(cell.count, cell.replicas);
            cell.ci_low = lo;
            cell.ci_high = hi;
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

std::string EventFrequencyResult::to_csv() const {
    std::string csv = "n,event,frequency,ci_low,ci_high,frequency_exact\n";
    for (const auto& c : cells) {
        Rational freq(c.count, c.replicas);
        csv += std::to_string(c.n) + "," + c.event + "," + dec(freq) + ",";
        csv += format_double(c.ci_low) + "," + format_double(c.ci_high) + ",";
        csv += freq.fraction_string() + "\n";
    }
    return csv;
}

nlohmann::json EventFrequencyResult::summary() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : cells)
        arr.push_back({{"n", c.n},
                       {"event", c.event},
                       {"frequency", Rational(c.count, c.replicas).fraction_string()}});
    return {{"frequencies", arr}};
}

// ---- persistence ----

namespace {

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

} // namespace

void write_outputs(const ExperimentConfig& cfg, const std::string& verb, const std::string& csv,
                   const nlohmann::json& summary) {
    std::filesystem::path dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
    std::filesystem::create_directories(dir);

    nlohmann::json manifest = {
        {"artifact", "alignsim"},
        {"version", "0.1.0"},
        {"verb", verb},
        {"created_utc", utc_timestamp()},
        {"config", cfg.to_json()},
        {"summary", summary},
    };
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");

    if (cfg.format == OutputFormat::csv) {
        write_file(dir / (verb + ".csv"), csv);
    } else {
        // same table, keyed by the CSV header (cells stay strings)
        nlohmann::json rows = nlohmann::json::array();
        std::vector<std::string> header;
        size_t pos = 0;
        bool first = true;
        while (pos < csv.size()) {
            size_t eol = csv.find('\n', pos);
            if (eol == std::string::npos) eol = csv.size();
            std::string line = csv.substr(pos, eol - pos);
            pos = eol + 1;
            if (line.empty()) continue;
            std::vector<std::string> cells;
            size_t c = 0;
            while (true) {
                size_t comma = line.find(',', c);
                cells.push_back(line.substr(c, comma == std::string::npos ? std::string::npos
                                                                          : comma - c));
                if (comma == std::string::npos) break;
                c = comma + 1;
            }
            if (first) {
                header = cells;
                first = false;
                continue;
            }
            nlohmann::json row;
            for (size_t i = 0; i < header.size() && i < cells.size(); ++i)
                row[header[i]] = cells[i];
            rows.push_back(std::move(row));
        }
        nlohmann::json doc = {{"verb", verb}, {"rows", rows}, {"summary", summary}};
        write_file(dir / (verb + ".json"), doc.dump(2) + "\n");
    }
}

} // namespace alignsim::experiments
