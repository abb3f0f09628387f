#include "alignsim/events.hpp"

#include <algorithm>
#include <limits>

#include "alignsim/oracles.hpp"

namespace alignsim {

Rational geometric_block_pmf(long k) {
    if (k < 0) throw std::invalid_argument("geometric_block_pmf: k must be nonnegative");
    return Rational(BigInt(1), BigInt::pow2(static_cast<unsigned>(k + 1)));
}

DeltaDistribution predicted_delta_distribution() {
    // P(Z<5) P(Z>1) = 31/32 * 1/4 up, P(Z>=5) P(Z<=1) = 1/32 * 3/4 down,
    // complement for the unchanged case.
    return DeltaDistribution(Rational(3, 128), Rational(94, 128), Rational(31, 128));
}

namespace {

std::vector<std::pair<long, long>> matched_one_pairs(const AlignmentPairs& a,
                                                     const BinarySequence& x,
                                                     const BinarySequence& y) {
    std::vector<std::pair<long, long>> mo;
    for (const auto& [pi, nu] : a.pairs)
        if (x[static_cast<size_t>(pi - 1)] == 1 && y[static_cast<size_t>(nu - 1)] == 1)
            mo.emplace_back(pi, nu);
    return mo;
}

long ones_strictly_between(const BinarySequence& s, long lo, long hi) {
    long c = 0;
    for (long p = lo + 1; p < hi; ++p)
        if (s[static_cast<size_t>(p - 1)] == 1) ++c;
    return c;
}

} // namespace

GapVector gap_vector(const AlignmentPairs& a, const BinarySequence& x, const BinarySequence& y) {
    validate_alignment(x, y, a);
    GapVector v;
    long prev_pi = 0, prev_nu = 0;
    for (const auto& [pi, nu] : matched_one_pairs(a, x, y)) {
        v.entries.emplace_back(ones_strictly_between(x, prev_pi, pi),
                               ones_strictly_between(y, prev_nu, nu));
        prev_pi = pi;
        prev_nu = nu;
    }
    return v;
}

bool in_V(const GapVector& v, long n, const EpsilonParams& params) {
    Rational k(v.pair_count());
    if (k < params.pstar() * Rational(n)) return false;
    return Rational(v.total_skipped()) <= params.eps * k * Rational(1, 2);
}

BlockAlignStats block_align_stats(const AlignmentPairs& a, const BinarySequence& x,
                                  const BinarySequence& y) {
    validate_alignment(x, y, a);
    BlockAlignStats st;
    BlockProfile prof = zero_block_profile(x);
    st.n5 = prof.n5;
    st.n1 = prof.n1;

    auto mo = matched_one_pairs(a, x, y);
    for (size_t i = 0; i + 1 < mo.size(); ++i) {
        // only zeros between the two pairs, in both texts
        if (ones_strictly_between(x, mo[i].first, mo[i + 1].first) != 0) continue;
        if (ones_strictly_between(y, mo[i].second, mo[i + 1].second) != 0) continue;
        const long dx = mo[i + 1].first - mo[i].first;
        const long dy = mo[i + 1].second - mo[i].second;
        if (dx == 6) {
            ++st.N5;
            if (dy < 6) ++st.N5less;
        }
        if (dx == 2) {
            ++st.N1;
            if (dy > 2) ++st.N1more;
        }
    }
    if (st.n5 > 0) st.p5 = Rational(st.N5less, st.n5);
    if (st.n1 > 0) st.p1 = Rational(st.N1more, st.n1);
    return st;
}

DeltaDistribution delta_distribution_exact(const BinarySequence& x, const BinarySequence& y,
                                           const ScoringScheme& scheme) {
    auto fives = zero_blocks_of_length(x, 5);
    auto singles = zero_blocks_of_length(x, 1);
    if (fives.empty() || singles.empty())
        throw NoEligibleBlockError("delta_distribution_exact: x needs a 5-block and a 1-block of zeros");

    ScaledScheme ss = ScaledScheme::from(scheme);
    if (!ss.scale.fits_int64())
        throw std::overflow_error("delta_distribution_exact: scheme denominator too large");
    const int64_t unit = ss.scale.to_int64();
    const int64_t base = dp::score(x, y, ss);
    const size_t m = y.size(), w = m + 1;

    long long count[3] = {0, 0, 0}; // -1, 0, +1
    std::vector<int64_t> fwd, bwd;
    for (const auto& five : fives) {
        const long d = five.second; // removing any zero of the block gives the same string
        std::vector<Bit> del = x.bits();
        del.erase(del.begin() + d);
        BinarySequence xdel(std::move(del));
        dp::forward(xdel, y, ss, fwd);
        dp::backward(xdel, y, ss, bwd);
        for (const auto& one : singles) {
            const long p = one.first;
            const long pd = p - (p > d ? 1 : 0); // position in xdel; p != d (distinct blocks)
            const int64_t* F = fwd.data() + static_cast<size_t>(pd + 1) * w;
            const int64_t* B = bwd.data() + static_cast<size_t>(pd + 1) * w;
            // split the alignment of xdel[0..pd] + '0' + xdel[pd+1..] at the
            // inserted zero: either it pairs with some y position or costs q
            int64_t best = std::numeric_limits<int64_t>::min();
            for (size_t c = 0; c <= m; ++c) best = std::max(best, F[c] + ss.q + B[c]);
            for (size_t c = 1; c <= m; ++c)
                best = std::max(best, F[c - 1] + ss.s[0][y[c - 1]] + B[c]);
            const int64_t diff = best - base;
            if (diff == -unit)
                ++count[0];
            else if (diff == 0)
                ++count[1];
            else if (diff == unit)
                ++count[2];
            else
                throw Error("delta_distribution_exact: score change outside {-1,0,1}");
        }
    }
    const long long total = static_cast<long long>(fives.size()) * static_cast<long long>(singles.size());
    return DeltaDistribution(Rational(count[0], total), Rational(count[1], total),
                             Rational(count[2], total));
}

namespace {

nlohmann::json flag_json(const EventFlag& f) {
    if (!f.value.has_value()) return nullptr;
    return *f.value;
}

} // namespace

nlohmann::json EventReport::to_json() const {
    nlohmann::json flags = {
        {"B0", flag_json(B0)}, {"B1", flag_json(B1)}, {"B3", flag_json(B3)},
        {"B4", flag_json(B4)}, {"C", flag_json(C)},   {"D", flag_json(D)},
        {"E", flag_json(E)},   {"F", flag_json(F)},   {"A", flag_json(A)},
    };
    nlohmann::json reasons = nlohmann::json::object();
    auto note = [&](const char* name, const EventFlag& f) {
        if (!f.reason.empty()) reasons[name] = f.reason;
    };
    note("B0", B0); note("B1", B1); note("B3", B3); note("B4", B4);
    note("C", C); note("D", D); note("E", E); note("F", F); note("A", A);

    nlohmann::json support = {
        {"ones_x", ones_x},
        {"ones_y", ones_y},
        {"min_matched_ones", min_matched_ones},
        {"profile_x", {{"n1", profile_x.n1}, {"n2", profile_x.n2},
                       {"n4", profile_x.n4}, {"n5", profile_x.n5}}},
        {"traceback_in_V", traceback_in_V},
        {"stats", {{"N5", canonical_stats.N5}, {"N5less", canonical_stats.N5less},
                   {"N1", canonical_stats.N1}, {"N1more", canonical_stats.N1more},
                   {"p5", canonical_stats.p5 ? nlohmann::json(canonical_stats.p5->fraction_string()) : nlohmann::json(nullptr)},
                   {"p1", canonical_stats.p1 ? nlohmann::json(canonical_stats.p1->fraction_string()) : nlohmann::json(nullptr)}}},
        {"strict_thresholds", strict_thresholds},
    };
    if (delta) {
        support["delta_pmf"] = {{"minus", delta->p_minus.fraction_string()},
                                {"zero", delta->p_zero.fraction_string()},
                                {"plus", delta->p_plus.fraction_string()}};
    }
    nlohmann::json out = {
        {"n", n},
        {"flags", flags},
        {"derived", {{"B2", B2_derived ? nlohmann::json(*B2_derived) : nlohmann::json(nullptr)}}},
        {"reasons", reasons},
        {"support", support},
    };
    if (exhaustive) {
        out["exhaustive"] = {
            {"optima_count", exhaustive->optima_count},
            {"optima_in_V", exhaustive->optima_in_V},
            {"B2", flag_json(exhaustive->B2)},
            {"C", flag_json(exhaustive->C)},
            {"D", flag_json(exhaustive->D)},
            {"E", flag_json(exhaustive->E)},
            {"F", flag_json(exhaustive->F)},
        };
    }
    return out;
}

namespace {

// Ratio-style event over a set of alignments: every alignment in V must have
// numer/denom >= threshold; vacuous when none is in V, absent when a
// denominator vanishes.
struct RatioEvent {
    bool any_in_V = false;
    bool undefined = false;
    bool violated = false;

    void feed(bool in_V_flag, long numer, long denom, const Rational& threshold) {
        if (!in_V_flag) return;
        any_in_V = true;
        if (denom == 0) {
            undefined = true;
            return;
        }
        if (Rational(numer, denom) < threshold) violated = true;
    }
    EventFlag flag(const std::string& what) const {
        if (!any_in_V) return EventFlag::vacuous("no optimal alignment in V");
        if (undefined) return EventFlag::absent(what + " undefined (zero denominator)");
        return EventFlag::of(!violated);
    }
};

} // namespace

EventReport check_events(const BinarySequence& x, const BinarySequence& y,
                         const ScoringScheme& scheme, const EpsilonParams& params,
                         const CheckOptions& options) {
    EventReport r;
    const long nx = static_cast<long>(x.size());
    const long ny = static_cast<long>(y.size());
    r.n = nx;
    r.strict_thresholds = options.strict_paper_thresholds;
    r.ones_x = static_cast<long>(x.ones());
    r.ones_y = static_cast<long>(y.ones());
    r.profile_x = zero_block_profile(x);

    // B0: both texts have close to half ones; |ones - n/2| <= eps n / 16.
    auto centered = [&](long ones, long n) {
        return Rational(std::abs(2 * ones - n), 2) <= params.eps * Rational(n, 16);
    };
    r.B0 = EventFlag::of(centered(r.ones_x, nx) && centered(r.ones_y, ny));

    // B1: every optimal alignment carries at least n/2 - eps n/8 one-pairs.
    r.min_matched_ones = min_matched_ones_among_optimal(x, y, scheme);
    r.B1 = EventFlag::of(Rational(r.min_matched_ones) >=
                         Rational(nx, 2) - params.eps * Rational(nx, 8));

    // B3 / B4: enough 5-blocks resp. 1-blocks. The default thresholds are
    // centred on the exact means; the literal printed thresholds sit above
    // the means and are kept behind the strict flag.
    Rational slack = params.eps * Rational(nx, 16);
    Rational b3_threshold, b4_threshold;
    if (options.strict_paper_thresholds) {
        b3_threshold = Rational(nx, 32) - slack;
        b4_threshold = Rational(nx, 4) - slack;
    } else {
        b3_threshold = (nx >= 5 ? expected_block_count(nx, 5) : Rational(0)) - slack;
        b4_threshold = (nx >= 1 ? expected_block_count(nx, 1) : Rational(0)) - slack;
    }
    r.B3 = EventFlag::of(Rational(r.profile_x.n5) >= b3_threshold);
    r.B4 = EventFlag::of(Rational(r.profile_x.n1) >= b4_threshold);

    if (r.B0.value.has_value() && r.B1.value.has_value())
        r.B2_derived = *r.B0.value && *r.B1.value;

    // canonical alignment: deterministic traceback
    AlignmentPairs tb = optimal_traceback(x, y, scheme);
    GapVector v = gap_vector(tb, x, y);
    r.traceback_in_V = in_V(v, nx, params);
    r.canonical_stats = block_align_stats(tb, x, y);

    const Rational c_threshold = Rational(31, 32) - params.eps1 * Rational(1, 4);
    const Rational d_threshold = Rational(1, 4) - params.eps1 * Rational(1, 4);
    const Rational e_threshold = Rational(31, 32) - params.eps1 * Rational(1, 2);
    const Rational f_threshold = Rational(1, 4) - params.eps1 * Rational(1, 2);

    {
        RatioEvent c, d, e, f;
        c.feed(r.traceback_in_V, r.canonical_stats.N5less, r.canonical_stats.N5, c_threshold);
        d.feed(r.traceback_in_V, r.canonical_stats.N1more, r.canonical_stats.N1, d_threshold);
        e.feed(r.traceback_in_V, r.canonical_stats.N5less, r.canonical_stats.n5, e_threshold);
        f.feed(r.traceback_in_V, r.canonical_stats.N1more, r.canonical_stats.n1, f_threshold);
        r.C = c.flag("N5less/N5");
        r.D = d.flag("N1more/N1");
        r.E = e.flag("p5");
        r.F = f.flag("p1");
    }

    // A: the exact conditional law of the transfer move
    if (r.profile_x.n5 >= 1 && r.profile_x.n1 >= 1) {
        r.delta = delta_distribution_exact(x, y, scheme);
        bool up = r.delta->p_plus >= Rational(31, 128) - params.eps1;
        bool down = r.delta->p_minus <= Rational(1, 32) + params.eps1;
        r.A = EventFlag::of(up && down);
    } else {
        r.A = EventFlag::absent("no eligible 5-block/1-block pair for the transfer");
    }

    // exhaustive quantification over all optimal alignments at small sizes
    if (nx <= options.exhaustive_limit && ny <= options.exhaustive_limit &&
        nx + ny <= oracles::kBruteForceSizeLimit) {
        EventReport::Exhaustive ex;
        RatioEvent c, d, e, f;
        bool all_in_V = true;
        oracles::for_each_optimal_alignment(x, y, scheme, [&](const AlignmentPairs& a) {
            ++ex.optima_count;
            GapVector gv = gap_vector(a, x, y);
            bool inv = in_V(gv, nx, params);
            if (!inv) {
                all_in_V = false;
                return;
            }
            ++ex.optima_in_V;
            BlockAlignStats st = block_align_stats(a, x, y);
            c.feed(true, st.N5less, st.N5, c_threshold);
            d.feed(true, st.N1more, st.N1, d_threshold);
            e.feed(true, st.N5less, st.n5, e_threshold);
            f.feed(true, st.N1more, st.n1, f_threshold);
        });
        ex.B2 = EventFlag::of(all_in_V);
        ex.C = c.flag("N5less/N5");
        ex.D = d.flag("N1more/N1");
        ex.E = e.flag("p5");
        ex.F = f.flag("p1");
        r.exhaustive = std::move(ex);
    }
    return r;
}

nlohmann::json ConditionLedger::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : conditions) {
        arr.push_back({{"name", c.name},
                       {"holds", c.holds ? nlohmann::json(*c.holds) : nlohmann::json(nullptr)},
                       {"detail", c.detail}});
    }
    return {{"conditions", arr}, {"overall", overall()}};
}

ConditionLedger validate_parameters(const EpsilonParams& params, const Rational& s11) {
    const Rational& eps = params.eps;
    const Rational& eps1 = params.eps1;
    ConditionLedger ledger;
    auto add = [&](std::string name, std::optional<bool> holds, std::string detail) {
        ledger.conditions.push_back({std::move(name), holds, std::move(detail)});
    };
    auto rel = [](const Rational& lhs, const char* op, const Rational& rhs) {
        return lhs.decimal_string(6) + std::string(" ") + op + " " + rhs.decimal_string(6);
    };

    // s(1,1) > 16/eps
    {
        Rational rhs = Rational(16) / eps;
        add("conditionepsi0", s11 > rhs, rel(s11, ">", rhs));
    }
    // (3 eps / 8) / (1 - eps/4) <= eps/2
    {
        Rational lhs = eps * Rational(3, 8) / (Rational(1) - eps * Rational(1, 4));
        add("conditionepsi1", lhs <= eps * Rational(1, 2), rel(lhs, "<=", eps * Rational(1, 2)));
    }
    // (31/32 - eps1/4)(1 - 3 eps / (1/4 - eps/2)) >= 31/32 - eps1/2
    {
        Rational denom = Rational(1, 4) - eps * Rational(1, 2);
        if (denom.sign() <= 0) {
            add("conditionepsi2", false, "1/4 - eps/2 <= 0: bound not applicable at this eps");
        } else {
            Rational lhs = (Rational(31, 32) - eps1 * Rational(1, 4)) *
                           (Rational(1) - Rational(3) * eps / denom);
            Rational rhs = Rational(31, 32) - eps1 * Rational(1, 2);
            add("conditionepsi2", lhs >= rhs, rel(lhs, ">=", rhs));
        }
    }
    // structurally consistent form: (1/4 - eps1/4)(1 - 3 eps / (2 - eps/2)) >= 1/4 - eps1/2;
    // the printed right-hand side mixes the 31/32 chain in and is recorded alongside
    {
        Rational denom = Rational(2) - eps * Rational(1, 2);
        Rational lhs = (Rational(1, 4) - eps1 * Rational(1, 4)) *
                       (Rational(1) - Rational(3) * eps / denom);
        Rational rhs = Rational(1, 4) - eps1 * Rational(1, 2);
        std::string detail = rel(lhs, ">=", rhs);
        Rational printed_denom = Rational(1, 4) - eps * Rational(1, 2);
        if (printed_denom.sign() > 0) {
            Rational printed_lhs = (Rational(1, 4) - eps1 * Rational(1, 4)) *
                                   (Rational(1) - Rational(3) * eps / printed_denom);
            Rational printed_rhs = Rational(31, 32) - eps1 * Rational(1, 2);
            detail += "; printed variant: " + rel(printed_lhs, ">=", printed_rhs) +
                      (printed_lhs >= printed_rhs ? " (holds)" : " (fails)");
        } else {
            detail += "; printed variant not applicable (1/4 - eps/2 <= 0)";
        }
        add("conditionepsi3", lhs >= rhs, detail);
    }
    // 35/64 + eps1/4 < 1
    {
        Rational lhs = Rational(35, 64) + eps1 * Rational(1, 4);
        add("conditionepsi4", lhs < Rational(1), rel(lhs, "<", Rational(1)));
    }
    // 1/32 - 7 eps / 16 >= 1/33
    {
        Rational lhs = Rational(1, 32) - eps * Rational(7, 16);
        add("conditionepsi5", lhs >= Rational(1, 33), rel(lhs, ">=", Rational(1, 33)));
    }
    // H(eps) + eps - gamma(eps1) < 0, gamma the Chernoff rate for a
    // Bernoulli(31/32) sample mean dropping below 31/33 - eps1/4
    {
        Rational level = Rational(31, 33) - eps1 * Rational(1, 4);
        RatInterval gamma = (level.sign() > 0 && level < Rational(31, 32))
                                ? bernoulli_kl_interval(level, Rational(31, 32))
                                : RatInterval::point(Rational(0));
        RatInterval expr = entropy_interval(eps) + RatInterval::point(eps) - gamma;
        std::optional<bool> holds = expr.certainly_lt(Rational(0));
        add("conditionepsi6", holds,
            "H(eps)+eps-gamma in [" + expr.lo.decimal_string(6) + ", " + expr.hi.decimal_string(6) +
                "]; gamma(eps1) in [" + gamma.lo.decimal_string(6) + ", " +
                gamma.hi.decimal_string(6) + "]");
    }
    // eps1 < 23/32
    add("conditionbias", eps1 < Rational(23, 32), rel(eps1, "<", Rational(23, 32)));
    return ledger;
}

} // namespace alignsim
