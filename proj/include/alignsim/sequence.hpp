// Binary texts, scoring schemes, and alignments.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alignsim/rational.hpp"

namespace alignsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidAlignmentError : Error {
    using Error::Error;
};
struct NoEligibleBlockError : Error {
    using Error::Error;
};
struct InfeasibleProfileError : Error {
    using Error::Error;
};
struct SizeGuardError : Error {
    using Error::Error;
};

using Bit = uint8_t;

// A finite word over {0,1}.
class BinarySequence {
public:
    BinarySequence() = default;
    explicit BinarySequence(std::vector<Bit> bits) : bits_(std::move(bits)) {
        for (Bit b : bits_)
            if (b > 1) throw std::invalid_argument("BinarySequence: symbol not in {0,1}");
    }

    static BinarySequence parse(std::string_view s) {
        std::vector<Bit> bits;
        bits.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("BinarySequence: expected a string over {0,1}");
            bits.push_back(static_cast<Bit>(c - '0'));
        }
        return BinarySequence(std::move(bits));
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    Bit operator[](std::size_t i) const { return bits_[i]; } // 0-based
    const std::vector<Bit>& bits() const { return bits_; }

    std::string str() const {
        std::string s;
        s.reserve(bits_.size());
        for (Bit b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    std::size_t ones() const {
        std::size_t c = 0;
        for (Bit b : bits_) c += b;
        return c;
    }
    std::size_t zeros() const { return size() - ones(); }

    friend bool operator==(const BinarySequence&, const BinarySequence&) = default;

private:
    std::vector<Bit> bits_;
};

// Substitution scores s(a,b) plus a per-gapped-symbol penalty q. The model
// under study fixes s00=1, s01=s10=0, q=0 with s11 large; all entries are
// exact rationals so that threshold comparisons stay bit-exact.
struct ScoringScheme {
    Rational s00{1}, s01{0}, s10{0}, s11{50}, q{0};

    static ScoringScheme paper(Rational s11_value = Rational(50)) {
        ScoringScheme s;
        s.s11 = std::move(s11_value);
        return s;
    }

    const Rational& score(Bit a, Bit b) const {
        return a == 0 ? (b == 0 ? s00 : s01) : (b == 0 ? s10 : s11);
    }
    bool symmetric() const { return s01 == s10; }
};

// An alignment (pi, nu): two strictly increasing index sequences of equal
// length, stored 1-based as in the model's definition.
struct AlignmentPairs {
    std::vector<std::pair<long, long>> pairs;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }

    friend bool operator==(const AlignmentPairs&, const AlignmentPairs&) = default;
};

// Throws InvalidAlignmentError on non-monotone or out-of-range indices.
inline void validate_alignment(const BinarySequence& x, const BinarySequence& y,
                               const AlignmentPairs& a) {
    long prev_pi = 0, prev_nu = 0;
    for (const auto& [pi, nu] : a.pairs) {
        if (pi <= prev_pi || nu <= prev_nu)
            throw InvalidAlignmentError("alignment indices must be strictly increasing");
        if (pi > static_cast<long>(x.size()) || nu > static_cast<long>(y.size()))
            throw InvalidAlignmentError("alignment index out of range");
        prev_pi = pi;
        prev_nu = nu;
    }
}

} // namespace alignsim
