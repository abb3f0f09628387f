// Optimal-alignment scoring: the O(n*m) score recurrence, a deterministic
// traceback, and the min-matched-ones refinement used by the event checkers.

#pragma once

#include <cstdint>
#include <vector>

#include "alignsim/sequence.hpp"

namespace alignsim {

// Scheme scaled to int64 so the DP runs on integers; value = scaled / scale.
struct ScaledScheme {
    int64_t s[2][2];
    int64_t q;
    BigInt scale; // lcm of the rational denominators

    static ScaledScheme from(const ScoringScheme& scheme);
    Rational unscale(int64_t v) const { return Rational(BigInt(v), scale); }
};

namespace dp {

// Tables are (n+1) x (m+1), row-major; fwd[i][j] = best score of x[0..i) vs
// y[0..j), bwd[i][j] = best score of x[i..n) vs y[j..m).
void forward(const BinarySequence& x, const BinarySequence& y, const ScaledScheme& ss,
             std::vector<int64_t>& table);
void backward(const BinarySequence& x, const BinarySequence& y, const ScaledScheme& ss,
              std::vector<int64_t>& table);
// Full optimum with O(m) memory.
int64_t score(const BinarySequence& x, const BinarySequence& y, const ScaledScheme& ss);

} // namespace dp

// Score of a given alignment: sum of pair scores plus q per symbol of either
// text left out of the pairing. Validates the alignment.
Rational score_of_alignment(const BinarySequence& x, const BinarySequence& y,
                            const AlignmentPairs& a, const ScoringScheme& scheme);

// Maximum alignment score over all alignments. Unequal lengths allowed.
Rational optimal_score(const BinarySequence& x, const BinarySequence& y,
                       const ScoringScheme& scheme);

// One optimal alignment, deterministic under a fixed tie policy applied while
// walking the table back from (n,m): prefer the diagonal, then the gap in x
// (consume a y symbol), then the gap in y.
AlignmentPairs optimal_traceback(const BinarySequence& x, const BinarySequence& y,
                                 const ScoringScheme& scheme);

// Minimum, over all score-optimal alignments, of the number of 1-1 pairs.
long min_matched_ones_among_optimal(const BinarySequence& x, const BinarySequence& y,
                                    const ScoringScheme& scheme);

// Number of 1-1 pairs in a given alignment.
long matched_ones_count(const BinarySequence& x, const BinarySequence& y,
                        const AlignmentPairs& a);

// The "match all the ones, then as many zeros as possible between them"
// construction: the i-th one of x pairs with the i-th one of y for
// i <= min(#ones), and within each segment between consecutive matched ones
// (and before the first / after the last) the j-th zero pairs with the j-th
// zero up to the shorter side's zero count.
AlignmentPairs matched_ones_alignment(const BinarySequence& x, const BinarySequence& y);

} // namespace alignsim
