#include "alignsim/blocks.hpp"

#include <stdexcept>

namespace alignsim {

BinarySequence RunDecomposition::reconstruct() const {
    std::vector<Bit> bits;
    for (const Run& r : runs) bits.insert(bits.end(), static_cast<size_t>(r.length), r.symbol);
    return BinarySequence(std::move(bits));
}

RunDecomposition decompose_runs(const BinarySequence& x) {
    RunDecomposition out;
    for (size_t i = 0; i < x.size();) {
        size_t j = i;
        while (j < x.size() && x[j] == x[i]) ++j;
        out.runs.push_back({x[i], static_cast<long>(j - i)});
        i = j;
    }
    return out;
}

BlockProfile zero_block_profile(const BinarySequence& x) {
    BlockProfile p;
    for (size_t i = 0; i < x.size();) {
        size_t j = i;
        while (j < x.size() && x[j] == x[i]) ++j;
        if (x[i] == 0) {
            switch (j - i) {
                case 1: ++p.n1; break;
                case 2: ++p.n2; break;
                case 4: ++p.n4; break;
                case 5: ++p.n5; break;
                default: break;
            }
        }
        i = j;
    }
    return p;
}

ProfileDecomposition profile_decompose(const BlockProfile& p) {
    if (!p.valid()) throw std::invalid_argument("profile_decompose: negative count");
    long k = std::min(p.n2, p.n4);
    return {shifted(p, -k), k};
}

std::vector<std::pair<long, long>> zero_blocks_of_length(const BinarySequence& x, long length) {
    std::vector<std::pair<long, long>> out;
    for (size_t i = 0; i < x.size();) {
        size_t j = i;
        while (j < x.size() && x[j] == x[i]) ++j;
        if (x[i] == 0 && static_cast<long>(j - i) == length)
            out.emplace_back(static_cast<long>(i), static_cast<long>(j - 1));
        i = j;
    }
    return out;
}

BinarySequence transfer(const BinarySequence& x, const TransferChoice& choice) {
    auto fives = zero_blocks_of_length(x, 5);
    auto ones = zero_blocks_of_length(x, 1);
    if (fives.empty() || ones.empty())
        throw NoEligibleBlockError("transfer: string needs a zero block of length 5 and one of length 1");
    if (choice.five_block < 0 || choice.five_block >= static_cast<long>(fives.size()) ||
        choice.one_block < 0 || choice.one_block >= static_cast<long>(ones.size()))
        throw std::out_of_range("transfer: block ordinal out of range");

    const long remove_pos = fives[static_cast<size_t>(choice.five_block)].second;
    const long grow_pos = ones[static_cast<size_t>(choice.one_block)].first;

    std::vector<Bit> bits = x.bits();
    if (remove_pos > grow_pos) {
        bits.erase(bits.begin() + remove_pos);
        bits.insert(bits.begin() + grow_pos + 1, 0);
    } else {
        bits.insert(bits.begin() + grow_pos + 1, 0);
        bits.erase(bits.begin() + remove_pos);
    }
    return BinarySequence(std::move(bits));
}

Rational expected_block_count(long n, long i) {
    if (i < 1 || i > n) throw std::invalid_argument("expected_block_count: need 1 <= i <= n");
    // A block of length i starts at j=1 or ends at j=n with one bounding one
    // (probability 2^-(i+1)), interior with two (probability 2^-(i+2)); there
    // are n-i-1 interior start positions. The i=n and i=n-1 strings have no
    // interior positions at all.
    if (i == n) return Rational(BigInt(1), BigInt::pow2(static_cast<unsigned>(n)));
    if (i == n - 1) return Rational(BigInt(2), BigInt::pow2(static_cast<unsigned>(n)));
    return Rational(BigInt(n - i - 1), BigInt::pow2(static_cast<unsigned>(i + 2))) +
           Rational(BigInt(2), BigInt::pow2(static_cast<unsigned>(i + 1)));
}

} // namespace alignsim
