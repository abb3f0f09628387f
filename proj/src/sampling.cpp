#include "alignsim/sampling.hpp"

namespace alignsim {

BinarySequence iid_sequence(long n, RngStream& rng) {
    if (n < 0) throw std::invalid_argument("iid_sequence: negative length");
    std::vector<Bit> bits(static_cast<size_t>(n));
    for (auto& b : bits) b = rng.next_bit();
    return BinarySequence(std::move(bits));
}

BinarySequence conditional_profile_sample(long n, const BlockProfile& p, RngStream& rng,
                                          long max_tries) {
    for (long t = 0; t < max_tries; ++t) {
        BinarySequence x = iid_sequence(n, rng);
        if (zero_block_profile(x) == p) return x;
    }
    throw InfeasibleProfileError("conditional_profile_sample: no hit within max_tries (profile infeasible or too rare)");
}

ChainTrajectory chain_trajectory(const BinarySequence& x0, long steps, RngStream& rng) {
    ChainTrajectory out;
    out.steps_requested = steps;
    out.states.push_back(x0);
    out.profiles.push_back(zero_block_profile(x0));
    for (long k = 0; k < steps; ++k) {
        const BlockProfile& p = out.profiles.back();
        if (p.n5 < 1 || p.n1 < 1) {
            out.stopped_early = true;
            break;
        }
        TransferChoice choice;
        choice.five_block = static_cast<long>(rng.next_below(static_cast<uint64_t>(p.n5)));
        choice.one_block = static_cast<long>(rng.next_below(static_cast<uint64_t>(p.n1)));
        out.states.push_back(transfer(out.states.back(), choice));
        out.profiles.push_back(zero_block_profile(out.states.back()));
    }
    return out;
}

} // namespace alignsim
