#include <doctest.h>

#include "alignsim/align.hpp"
#include "alignsim/events.hpp"
#include "alignsim/oracles.hpp"
#include "alignsim/sampling.hpp"

using namespace alignsim;

namespace {

// X and Y of the block-statistics example, read off the displayed alignment
// (the inline string in the text drops a symbol and is inconsistent with the
// printed counts, so the alignment display is authoritative).
const char* kStatsX = "10101011000001";
const char* kStatsY = "101000110001";

AlignmentPairs stats_example_alignment() {
    return AlignmentPairs{{{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 7}, {8, 8}, {9, 9}, {10, 10},
                           {11, 11}, {14, 12}}};
}

} // namespace

TEST_CASE("geometric_block_pmf") {
    CHECK(geometric_block_pmf(0) == Rational(1, 2));
    CHECK(geometric_block_pmf(4) == Rational(1, 32));
    Rational below5(0);
    for (long k = 0; k < 5; ++k) below5 += geometric_block_pmf(k);
    CHECK(below5 == Rational(31, 32)); // P(Z < 5)
    CHECK(Rational(1) - geometric_block_pmf(0) - geometric_block_pmf(1) == Rational(1, 4)); // P(Z > 1)
    CHECK_THROWS_AS(geometric_block_pmf(-1), std::invalid_argument);
}

TEST_CASE("predicted_delta_distribution") {
    DeltaDistribution d = predicted_delta_distribution();
    CHECK(d.p_plus == Rational(31, 128));
    CHECK(d.p_minus == Rational(3, 128));
    CHECK(d.p_zero == Rational(94, 128));
    CHECK(d.p_plus + d.p_minus + d.p_zero == Rational(1));
    CHECK(d.mean() == Rational(28, 128));
}

TEST_CASE("DeltaDistribution validates its vector") {
    CHECK_THROWS_AS(DeltaDistribution(Rational(1, 2), Rational(1, 2), Rational(1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(DeltaDistribution(Rational(-1, 2), Rational(1), Rational(1, 2)),
                    std::invalid_argument);
}

TEST_CASE("gap_vector on the encoding example") {
    BinarySequence x = BinarySequence::parse("0101011");
    BinarySequence y = BinarySequence::parse("0001111");
    AlignmentPairs a{{{1, 1}, {2, 4}, {3, 5}, {4, 6}, {7, 7}}};
    GapVector v = gap_vector(a, x, y);
    GapVector expect{{{0, 0}, {0, 1}, {1, 0}}};
    CHECK(v == expect);
}

TEST_CASE("gap_vector of fully matched ones is all zeros") {
    BinarySequence x = BinarySequence::parse("11");
    AlignmentPairs a{{{1, 1}, {2, 2}}};
    GapVector v = gap_vector(a, x, x);
    GapVector expect{{{0, 0}, {0, 0}}};
    CHECK(v == expect);

    RngStream rng(31, 0);
    for (int t = 0; t < 40; ++t) {
        long n = 1 + static_cast<long>(rng.next_below(12));
        std::vector<Bit> bits(static_cast<size_t>(n), 1);
        BinarySequence ones(bits);
        AlignmentPairs tb = optimal_traceback(ones, ones, ScoringScheme::paper());
        for (const auto& [va, vb] : gap_vector(tb, ones, ones).entries) {
            CHECK(va == 0);
            CHECK(vb == 0);
        }
    }
}

TEST_CASE("in_V membership") {
    EpsilonParams params(Rational(2, 5), Rational(1, 10));
    GapVector big;
    for (int i = 0; i < 60; ++i) big.entries.emplace_back(0, 0);
    CHECK(in_V(big, 100, params));
    GapVector small;
    for (int i = 0; i < 10; ++i) small.entries.emplace_back(0, 0);
    CHECK(!in_V(small, 100, params));

    // boundary: k = ceil(p* n) = 45 at n=100, eps=2/5; budget floor(eps k/2) = 9
    GapVector boundary;
    for (int i = 0; i < 45; ++i) boundary.entries.emplace_back(0, 0);
    boundary.entries[0] = {5, 4}; // total 9
    CHECK(in_V(boundary, 100, params));
    boundary.entries[0] = {5, 5}; // total 10 > 9
    CHECK(!in_V(boundary, 100, params));
    GapVector short_one = boundary;
    short_one.entries[0] = {0, 0};
    short_one.entries.pop_back(); // k = 44 < 45
    CHECK(!in_V(short_one, 100, params));
}

TEST_CASE("block_align_stats reproduces the printed counts") {
    BinarySequence x = BinarySequence::parse(kStatsX);
    BinarySequence y = BinarySequence::parse(kStatsY);
    BlockAlignStats st = block_align_stats(stats_example_alignment(), x, y);
    CHECK(st.n1 == 3);
    CHECK(st.N1 == 2);
    CHECK(st.N1more == 1);
    REQUIRE(st.p1.has_value());
    CHECK(*st.p1 == Rational(1, 3));
    CHECK(st.n5 == 1);
    CHECK(st.N5 == 1);
    CHECK(st.N5less == 1);
    REQUIRE(st.p5.has_value());
    CHECK(*st.p5 == Rational(1));
}

TEST_CASE("block_align_stats with no zero blocks reports absent ratios") {
    BinarySequence x = BinarySequence::parse("11");
    AlignmentPairs a{{{1, 1}, {2, 2}}};
    BlockAlignStats st = block_align_stats(a, x, x);
    CHECK(st.N5 == 0);
    CHECK(st.N1 == 0);
    CHECK(!st.p5.has_value());
    CHECK(!st.p1.has_value());
}

TEST_CASE("delta_distribution_exact on the unique-transfer example") {
    BinarySequence x = BinarySequence::parse("1011000001");
    BinarySequence y = BinarySequence::parse("10010101");
    DeltaDistribution d = delta_distribution_exact(x, y, ScoringScheme::paper(Rational(1)));
    CHECK(d.p_plus == Rational(1));
    CHECK(d.p_minus == Rational(0));
    CHECK(d.p_zero == Rational(0));
}

TEST_CASE("delta_distribution_exact enumerates n5*n1 choices") {
    // 0 1 00000 1 0 1 00000: profile (2,0,0,2), four transfer choices
    BinarySequence x = BinarySequence::parse("010000010100000");
    CHECK(zero_block_profile(x) == BlockProfile{2, 0, 0, 2});
    RngStream rng(32, 0);
    BinarySequence y = iid_sequence(15, rng);
    DeltaDistribution d = delta_distribution_exact(x, y, ScoringScheme::paper(Rational(50)));
    // probabilities are counts over 4 equiprobable choices
    CHECK(BigInt(4) % d.p_plus.den() == BigInt(0));
    CHECK(BigInt(4) % d.p_minus.den() == BigInt(0));
    CHECK(BigInt(4) % d.p_zero.den() == BigInt(0));
}

TEST_CASE("delta_distribution_exact needs eligible blocks") {
    RngStream rng(33, 0);
    BinarySequence y = iid_sequence(8, rng);
    CHECK_THROWS_AS(delta_distribution_exact(BinarySequence::parse("11111111"), y,
                                             ScoringScheme::paper()),
                    NoEligibleBlockError);
}

TEST_CASE("delta law matches full recomputation on random texts") {
    RngStream rng(34, 0);
    ScoringScheme schemes[2] = {ScoringScheme::paper(Rational(1)), ScoringScheme::paper(Rational(50))};
    ScaledScheme ss[2] = {ScaledScheme::from(schemes[0]), ScaledScheme::from(schemes[1])};
    int done = 0;
    while (done < 50) {
        long n = 20 + static_cast<long>(rng.next_below(50));
        BinarySequence x = iid_sequence(n, rng);
        BinarySequence y = iid_sequence(n, rng);
        BlockProfile p = zero_block_profile(x);
        if (p.n5 < 1 || p.n1 < 1) continue;
        ++done;
        for (int si = 0; si < 2; ++si) {
            long long c[3] = {0, 0, 0};
            int64_t base = dp::score(x, y, ss[si]);
            for (long a = 0; a < p.n5; ++a) {
                for (long b = 0; b < p.n1; ++b) {
                    int64_t diff = dp::score(transfer(x, {a, b}), y, ss[si]) - base;
                    REQUIRE(diff >= -1);
                    REQUIRE(diff <= 1);
                    ++c[diff + 1];
                }
            }
            long long tot = static_cast<long long>(p.n5) * p.n1;
            DeltaDistribution slow(Rational(c[0], tot), Rational(c[1], tot), Rational(c[2], tot));
            CHECK(delta_distribution_exact(x, y, schemes[si]) == slow);
        }
    }
}

TEST_CASE("check_events: balanced texts satisfy B0") {
    // n = 8 with exactly 4 ones on both sides
    BinarySequence x = BinarySequence::parse("10101010");
    EventReport r = check_events(x, x, ScoringScheme::paper(), EpsilonParams());
    CHECK(r.B0.is_true());
    CHECK(r.ones_x == 4);
    CHECK(r.B2_derived.has_value());
}

TEST_CASE("check_events: all-ones text fails the block-supply events") {
    // thresholds stay positive at eps = 1/10, so missing blocks mean failure
    std::vector<Bit> bits(512, 1);
    BinarySequence x(bits);
    RngStream rng(35, 0);
    BinarySequence y = iid_sequence(512, rng);
    EpsilonParams params(Rational(1, 10), Rational(1, 10));
    EventReport r = check_events(x, y, ScoringScheme::paper(), params);
    CHECK(r.B3.value == false);
    CHECK(r.B4.value == false);
    CHECK(!r.A.value.has_value()); // transfer undefined without blocks
    CHECK(!r.A.reason.empty());
}

TEST_CASE("check_events strict thresholds are harder than the defaults") {
    RngStream rng(36, 0);
    CheckOptions strict;
    strict.strict_paper_thresholds = true;
    for (int t = 0; t < 20; ++t) {
        BinarySequence x = iid_sequence(256, rng);
        BinarySequence y = iid_sequence(256, rng);
        EventReport def = check_events(x, y, ScoringScheme::paper(), EpsilonParams());
        EventReport str = check_events(x, y, ScoringScheme::paper(), EpsilonParams(), strict);
        // the printed thresholds sit above the exact means, so strict B3/B4
        // can only turn flags off
        if (str.B3.is_true()) CHECK(def.B3.is_true());
        if (str.B4.is_true()) CHECK(def.B4.is_true());
    }
}

TEST_CASE("check_events A flag follows the exact delta law") {
    RngStream rng(37, 0);
    EpsilonParams params(Rational(2, 5), Rational(1, 10));
    int done = 0;
    while (done < 10) {
        BinarySequence x = iid_sequence(128, rng);
        BinarySequence y = iid_sequence(128, rng);
        BlockProfile p = zero_block_profile(x);
        if (p.n5 < 1 || p.n1 < 1) continue;
        ++done;
        EventReport r = check_events(x, y, ScoringScheme::paper(), params);
        REQUIRE(r.delta.has_value());
        bool expect = r.delta->p_plus >= Rational(31, 128) - params.eps1 &&
                      r.delta->p_minus <= Rational(1, 32) + params.eps1;
        CHECK(r.A.value == expect);
    }
}

TEST_CASE("check_events exhaustive block appears for small texts") {
    RngStream rng(38, 0);
    BinarySequence x = iid_sequence(10, rng);
    BinarySequence y = iid_sequence(10, rng);
    EventReport r = check_events(x, y, ScoringScheme::paper(), EpsilonParams());
    REQUIRE(r.exhaustive.has_value());
    CHECK(r.exhaustive->optima_count >= 1);
    CHECK(r.exhaustive->optima_in_V <= r.exhaustive->optima_count);

    BinarySequence big = iid_sequence(40, rng);
    EventReport r2 = check_events(big, big, ScoringScheme::paper(), EpsilonParams());
    CHECK(!r2.exhaustive.has_value());
}

TEST_CASE("event report serializes with the fixed flag names") {
    RngStream rng(39, 0);
    BinarySequence x = iid_sequence(64, rng);
    BinarySequence y = iid_sequence(64, rng);
    EventReport r = check_events(x, y, ScoringScheme::paper(), EpsilonParams());
    nlohmann::json j = r.to_json();
    for (const char* name : {"B0", "B1", "B3", "B4", "C", "D", "E", "F", "A"})
        CHECK(j["flags"].contains(name));
    CHECK(j["derived"].contains("B2"));
    CHECK(j["support"]["profile_x"].contains("n5"));
}

TEST_CASE("inclusion lemmas hold exhaustively at small sizes") {
    // gate each inclusion on its parameter condition, then quantify C/D/E/F
    // over all optimal alignments via the exhaustive checker
    EpsilonParams params(Rational(1, 100), Rational(1, 2));
    ConditionLedger ledger = validate_parameters(params, Rational(50));
    auto holds = [&](const std::string& name) {
        for (const auto& c : ledger.conditions)
            if (c.name == name) return c.holds.has_value() && *c.holds;
        return false;
    };
    bool gate_e = holds("conditionepsi1") && holds("conditionepsi2");
    bool gate_f = holds("conditionepsi1") && holds("conditionepsi3");
    bool gate_a = holds("conditionepsi4");

    RngStream rng(40, 0);
    long nonvacuous_e = 0, nonvacuous_f = 0, nonvacuous_a = 0;
    for (int t = 0; t < 400; ++t) {
        BinarySequence x = iid_sequence(10, rng);
        BinarySequence y = iid_sequence(10, rng);
        EventReport r = check_events(x, y, ScoringScheme::paper(), params);
        REQUIRE(r.exhaustive.has_value());
        const auto& ex = *r.exhaustive;
        if (gate_e && r.B0.is_true() && r.B1.is_true() && r.B3.is_true() && ex.C.is_true()) {
            ++nonvacuous_e;
            CHECK(ex.E.is_true());
        }
        if (gate_f && r.B0.is_true() && r.B1.is_true() && r.B4.is_true() && ex.D.is_true()) {
            ++nonvacuous_f;
            CHECK(ex.F.is_true());
        }
        // the E,F -> A step needs a witness alignment in V, else E and F are
        // only vacuously true and say nothing about the transfer law
        if (gate_a && ex.optima_in_V > 0 && ex.E.is_true() && ex.F.is_true() &&
            r.A.value.has_value()) {
            ++nonvacuous_a;
            CHECK(r.A.is_true());
        }
    }
    MESSAGE("antecedent counts: E=" << nonvacuous_e << " F=" << nonvacuous_f
                                    << " A=" << nonvacuous_a);
}

TEST_CASE("optimal alignments land in V when the texts are balanced") {
    // at eps = 3/10 the proportionality condition holds, so B0 and B1
    // together should force every optimal alignment into V
    EpsilonParams params(Rational(3, 10), Rational(1, 10));
    ConditionLedger ledger = validate_parameters(params, Rational(50));
    bool epsi1 = false;
    for (const auto& c : ledger.conditions)
        if (c.name == "conditionepsi1") epsi1 = c.holds.value_or(false);
    REQUIRE(epsi1);

    RngStream rng(41, 0);
    long nonvacuous = 0;
    for (int t = 0; t < 600 && nonvacuous < 25; ++t) {
        BinarySequence x = iid_sequence(10, rng);
        BinarySequence y = iid_sequence(10, rng);
        EventReport r = check_events(x, y, ScoringScheme::paper(), params);
        if (!(r.B0.is_true() && r.B1.is_true())) continue;
        ++nonvacuous;
        REQUIRE(r.exhaustive.has_value());
        CHECK(r.exhaustive->B2.is_true());
    }
    CHECK(nonvacuous > 0);
}

TEST_CASE("check_events handles degenerate inputs") {
    EpsilonParams params;
    EventReport empty = check_events(BinarySequence(), BinarySequence(), ScoringScheme::paper(),
                                     params);
    CHECK(empty.B0.is_true()); // deviation zero on both sides
    CHECK(!empty.A.value.has_value());
    EventReport one = check_events(BinarySequence::parse("1"), BinarySequence::parse("0"),
                                   ScoringScheme::paper(), params);
    CHECK(one.n == 1);
    CHECK(one.to_json().contains("flags"));
}

TEST_CASE("raising s11 never loosens the matched-ones floor on this corpus") {
    // empirical observation on a fixed seeded corpus, not a theorem
    RngStream rng(42, 0);
    EpsilonParams params(Rational(2, 5), Rational(1, 10));
    for (int t = 0; t < 150; ++t) {
        long n = 16 + static_cast<long>(rng.next_below(48));
        BinarySequence x = iid_sequence(n, rng);
        BinarySequence y = iid_sequence(n, rng);
        long m5 = min_matched_ones_among_optimal(x, y, ScoringScheme::paper(Rational(5)));
        long m50 = min_matched_ones_among_optimal(x, y, ScoringScheme::paper(Rational(50)));
        CHECK(m50 >= m5);
        Rational threshold = Rational(n, 2) - params.eps * Rational(n, 8);
        if (Rational(m5) >= threshold) CHECK(Rational(m50) >= threshold);
    }
}

TEST_CASE("validate_parameters evaluates the printed inequalities") {
    ConditionLedger defaults = validate_parameters(EpsilonParams(Rational(2, 5), Rational(1, 10)),
                                                   Rational(50));
    auto find = [&](const ConditionLedger& l, const std::string& name) -> const ConditionResult& {
        for (const auto& c : l.conditions)
            if (c.name == name) return c;
        static ConditionResult missing;
        return missing;
    };
    CHECK(find(defaults, "conditionepsi0").holds == true);  // 50 > 40
    CHECK(find(defaults, "conditionbias").holds == true);   // 1/10 < 23/32
    CHECK(find(defaults, "conditionepsi5").holds == false); // eps = 2/5 is far too big
    CHECK(!defaults.overall());

    ConditionLedger tiny = validate_parameters(EpsilonParams(Rational(1, 1000), Rational(1, 10)),
                                               Rational(50));
    CHECK(find(tiny, "conditionepsi5").holds == true);

    // a parameter point satisfying the whole ladder
    ConditionLedger all = validate_parameters(EpsilonParams(Rational(1, 500), Rational(1, 2)),
                                              Rational(10000));
    for (const auto& c : all.conditions) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.holds == true);
    }
    CHECK(all.overall());

    nlohmann::json j = defaults.to_json();
    CHECK(j["conditions"].size() == 8);
    CHECK(j.contains("overall"));
}
