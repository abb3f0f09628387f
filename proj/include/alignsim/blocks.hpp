// Run decomposition of binary strings, the (N1,N2,N4,N5) zero-block profile,
// its lattice decomposition along e = (-1,1,1,-1), and the block-transfer
// move that shortens a length-5 zero block and grows a length-1 zero block.

#pragma once

#include <array>
#include <vector>

#include "alignsim/rational.hpp"
#include "alignsim/sequence.hpp"

namespace alignsim {

struct Run {
    Bit symbol;
    long length;
    friend bool operator==(const Run&, const Run&) = default;
};

struct RunDecomposition {
    std::vector<Run> runs;
    BinarySequence reconstruct() const;
    friend bool operator==(const RunDecomposition&, const RunDecomposition&) = default;
};

// Maximal runs, in order.
RunDecomposition decompose_runs(const BinarySequence& x);

// Counts of zero blocks of lengths 1, 2, 4 and 5; other lengths are not
// tracked (recover them from the run decomposition when needed).
struct BlockProfile {
    long n1 = 0, n2 = 0, n4 = 0, n5 = 0;

    std::array<long, 4> as_array() const { return {n1, n2, n4, n5}; }
    bool valid() const { return n1 >= 0 && n2 >= 0 && n4 >= 0 && n5 >= 0; }

    friend bool operator==(const BlockProfile&, const BlockProfile&) = default;
    friend auto operator<=>(const BlockProfile&, const BlockProfile&) = default;
};

// The profile shift of one transfer move.
inline constexpr std::array<long, 4> kTransferShift{-1, 1, 1, -1};

inline BlockProfile shifted(const BlockProfile& p, long k) {
    return {p.n1 - k, p.n2 + k, p.n4 + k, p.n5 - k};
}

BlockProfile zero_block_profile(const BinarySequence& x);

// p = m + k*e with k = min(n2, n4), so m has m.n2 == 0 or m.n4 == 0; the
// decomposition is unique.
struct ProfileDecomposition {
    BlockProfile m;
    long k = 0;
    friend bool operator==(const ProfileDecomposition&, const ProfileDecomposition&) = default;
};

ProfileDecomposition profile_decompose(const BlockProfile& p);

// Start/end positions (0-based, inclusive) of each zero block with the given
// length, in left-to-right order.
std::vector<std::pair<long, long>> zero_blocks_of_length(const BinarySequence& x, long length);

// Which length-5 block loses a zero and which length-1 block gains it,
// as ordinals (0-based) among the blocks of that length.
struct TransferChoice {
    long five_block = 0;
    long one_block = 0;
};

// The removed zero is taken from the right end of the 5-block and appended to
// the right end of the 1-block; any in-block position yields the same string.
// Throws NoEligibleBlockError if x lacks a 5-block or a 1-block, or
// std::out_of_range for a bad ordinal.
BinarySequence transfer(const BinarySequence& x, const TransferChoice& choice);

// Exact E[N_i] for an iid Bernoulli(1/2) string of length n, 1 <= i <= n.
// Blocks touching the string ends count. Satisfies |mu_i - n/2^(i+2)| <= i.
Rational expected_block_count(long n, long i);

} // namespace alignsim
