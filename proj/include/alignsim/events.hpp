// The combinatorial layer around the transfer move: gap-vector encoding of
// matched-ones alignments, V^k membership, block-alignment statistics, the
// exact conditional law of the score change, the typicality events
// B0..B4, C, D, E, F, A, and the epsilon/epsilon1 condition ledger.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alignsim/align.hpp"
#include "alignsim/blocks.hpp"
#include "alignsim/sequence.hpp"

namespace alignsim {

// Per matched-ones pair: how many ones of x resp. y were skipped since the
// previous matched pair (entry 1 counts from the start of the texts).
struct GapVector {
    std::vector<std::pair<long, long>> entries;

    long pair_count() const { return static_cast<long>(entries.size()); }
    long total_skipped() const {
        long s = 0;
        for (const auto& [a, b] : entries) s += a + b;
        return s;
    }
    friend bool operator==(const GapVector&, const GapVector&) = default;
};

struct EpsilonParams {
    Rational eps{2, 5};
    Rational eps1{1, 10};

    EpsilonParams() = default;
    EpsilonParams(Rational e, Rational e1) : eps(std::move(e)), eps1(std::move(e1)) {
        if (eps.sign() <= 0 || eps >= Rational(1) || eps1.sign() <= 0 || eps1 >= Rational(1))
            throw std::invalid_argument("EpsilonParams: eps and eps1 must lie in (0,1)");
    }

    Rational pstar() const { return Rational(1, 2) - eps * Rational(1, 8); }
};

// Counts over consecutive matched-ones pairs with nothing but zeros between
// them in both texts: N5 / N5less for a 5-zero gap in x, N1 / N1more for a
// 1-zero gap. p5 = N5less/n5 and p1 = N1more/n1 with the denominators taken
// from x's block profile; absent when the denominator is zero.
struct BlockAlignStats {
    long N5 = 0, N5less = 0, N1 = 0, N1more = 0;
    long n5 = 0, n1 = 0;
    std::optional<Rational> p5, p1;
};

// Law of the score change of one uniformly random transfer, support {-1,0,1}.
struct DeltaDistribution {
    Rational p_minus, p_zero, p_plus;

    DeltaDistribution(Rational minus, Rational zero, Rational plus)
        : p_minus(std::move(minus)), p_zero(std::move(zero)), p_plus(std::move(plus)) {
        if (p_minus.sign() < 0 || p_zero.sign() < 0 || p_plus.sign() < 0 ||
            p_minus + p_zero + p_plus != Rational(1))
            throw std::invalid_argument("DeltaDistribution: needs a probability vector over {-1,0,1}");
    }

    Rational mean() const { return p_plus - p_minus; }
    friend bool operator==(const DeltaDistribution&, const DeltaDistribution&) = default;
};

// P(Z = k) = 2^-(k+1) for the block length between matched ones.
Rational geometric_block_pmf(long k);

// The matched-ones model prediction: +1 with 31/128, -1 with 3/128, and the
// complement 94/128 for an unchanged score.
DeltaDistribution predicted_delta_distribution();

// Gap vector of an alignment; only 1-1 pairs anchor entries, every other one
// between consecutive anchors counts as skipped.
GapVector gap_vector(const AlignmentPairs& a, const BinarySequence& x, const BinarySequence& y);

// v in V iff it aligns k >= (1/2 - eps/8) n pairs of ones and skips at most
// eps*k/2 ones in total.
bool in_V(const GapVector& v, long n, const EpsilonParams& params);

BlockAlignStats block_align_stats(const AlignmentPairs& a, const BinarySequence& x,
                                  const BinarySequence& y);

// Enumerates all n5*n1 transfer choices on x, scores each modified text
// against y, and returns the exact equiprobable mixture. Throws
// NoEligibleBlockError when x has no 5-block or no 1-block, and Error if some
// choice moves the score by more than one (impossible in this scoring model).
DeltaDistribution delta_distribution_exact(const BinarySequence& x, const BinarySequence& y,
                                           const ScoringScheme& scheme);

// A flag that may be undecidable for this input (undefined ratio, no eligible
// block); the reason says why, or notes vacuous truth.
struct EventFlag {
    std::optional<bool> value;
    std::string reason;

    bool is_true() const { return value.value_or(false); }
    static EventFlag yes() { return {true, ""}; }
    static EventFlag no() { return {false, ""}; }
    static EventFlag of(bool b) { return {b, ""}; }
    static EventFlag vacuous(std::string why) { return {true, std::move(why)}; }
    static EventFlag absent(std::string why) { return {std::nullopt, std::move(why)}; }
};

struct CheckOptions {
    bool strict_paper_thresholds = false;
    // Quantify C/D/E/F (and the actual B2) over *all* optimal alignments via
    // the brute-force enumerator when both texts are at most this long.
    long exhaustive_limit = 12;
};

struct EventReport {
    long n = 0;
    EventFlag B0, B1, B3, B4, C, D, E, F, A;
    std::optional<bool> B2_derived; // B0 && B1 (Lemma: those imply B2)

    long ones_x = 0, ones_y = 0;
    long min_matched_ones = 0;
    BlockProfile profile_x;
    bool traceback_in_V = false;
    BlockAlignStats canonical_stats;
    std::optional<DeltaDistribution> delta;
    bool strict_thresholds = false;

    struct Exhaustive {
        long optima_count = 0;
        long optima_in_V = 0;
        EventFlag B2, C, D, E, F;
    };
    std::optional<Exhaustive> exhaustive;

    nlohmann::json to_json() const;
};

// B0 from exact one counts, B1 via the min-matched-ones DP, B3/B4 from the
// block profile (mean-centred thresholds by default, the literal printed
// thresholds behind strict_paper_thresholds), C/D/E/F on the canonical
// traceback (and exhaustively for small inputs), A from the exact delta law.
EventReport check_events(const BinarySequence& x, const BinarySequence& y,
                         const ScoringScheme& scheme, const EpsilonParams& params,
                         const CheckOptions& options = {});

struct ConditionResult {
    std::string name;
    std::optional<bool> holds; // nullopt: enclosure too wide to certify
    std::string detail;
};

struct ConditionLedger {
    std::vector<ConditionResult> conditions;

    bool overall() const {
        for (const auto& c : conditions)
            if (!c.holds.has_value() || !*c.holds) return false;
        return true;
    }
    nlohmann::json to_json() const;
};

// Evaluates the epsilon/epsilon1 inequalities the event ladder needs
// (conditionepsi0..conditionepsi6 and the bias condition), exactly where the
// inequality is rational and with certified log enclosures where it involves
// the entropy function.
ConditionLedger validate_parameters(const EpsilonParams& params, const Rational& s11);

} // namespace alignsim
