// Seeded generation: iid texts, conditional-profile samples by rejection, and
// the block-profile chain X(m), X(m+e), X(m+2e), ...

#pragma once

#include <vector>

#include "alignsim/blocks.hpp"
#include "alignsim/rng.hpp"
#include "alignsim/sequence.hpp"

namespace alignsim {

// n iid Bernoulli(1/2) symbols.
BinarySequence iid_sequence(long n, RngStream& rng);

// A uniform sample from {x of length n : zero_block_profile(x) = p}, drawn by
// rejection from the iid law. Throws InfeasibleProfileError after max_tries
// draws without a hit (which also covers infeasible profiles).
BinarySequence conditional_profile_sample(long n, const BlockProfile& p, RngStream& rng,
                                          long max_tries);

struct ChainTrajectory {
    std::vector<BinarySequence> states;   // states[0] = x0
    std::vector<BlockProfile> profiles;   // profiles[k+1] = profiles[k] + e
    bool stopped_early = false;           // ran out of eligible blocks
    long steps_requested = 0;

    long steps_taken() const { return static_cast<long>(states.size()) - 1; }
};

// Runs `steps` transfer moves from x0, drawing the 5-block and then the
// 1-block uniformly at each step. If a state has no eligible block the
// trajectory stops there and is returned with stopped_early set; the model
// leaves that case unspecified, so it is reported rather than papered over.
ChainTrajectory chain_trajectory(const BinarySequence& x0, long steps, RngStream& rng);

} // namespace alignsim
