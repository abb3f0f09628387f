#include <doctest.h>

#include "alignsim/blocks.hpp"
#include "alignsim/oracles.hpp"
#include "alignsim/rng.hpp"
#include "alignsim/sampling.hpp"

using namespace alignsim;

TEST_CASE("decompose_runs finds maximal runs") {
    RunDecomposition d = decompose_runs(BinarySequence::parse("000011100000"));
    RunDecomposition expect{{{0, 4}, {1, 3}, {0, 5}}};
    CHECK(d == expect);
    CHECK(decompose_runs(BinarySequence()).runs.empty());
    RunDecomposition one = decompose_runs(BinarySequence::parse("1"));
    CHECK(one.runs.size() == 1);
    CHECK(one.runs[0] == Run{1, 1});
}

TEST_CASE("run decomposition round trips") {
    RngStream rng(21, 0);
    for (int t = 0; t < 200; ++t) {
        BinarySequence x = iid_sequence(static_cast<long>(rng.next_below(64)), rng);
        RunDecomposition d = decompose_runs(x);
        CHECK(d.reconstruct() == x);
        for (size_t i = 0; i + 1 < d.runs.size(); ++i) CHECK(d.runs[i].symbol != d.runs[i + 1].symbol);
        long total = 0;
        for (const Run& r : d.runs) {
            CHECK(r.length >= 1);
            total += r.length;
        }
        CHECK(total == static_cast<long>(x.size()));
    }
    // random run lists reconstruct and decompose back to themselves
    for (int t = 0; t < 100; ++t) {
        RunDecomposition runs;
        Bit sym = static_cast<Bit>(rng.next_bit());
        long count = 1 + static_cast<long>(rng.next_below(8));
        for (long i = 0; i < count; ++i) {
            runs.runs.push_back({sym, 1 + static_cast<long>(rng.next_below(6))});
            sym = static_cast<Bit>(1 - sym);
        }
        CHECK(decompose_runs(runs.reconstruct()) == runs);
    }
}

TEST_CASE("zero_block_profile on the worked strings") {
    CHECK(zero_block_profile(BinarySequence::parse("0101000001100000")) ==
          BlockProfile{2, 0, 0, 2});
    CHECK(zero_block_profile(BinarySequence::parse("0010100000110000")) ==
          BlockProfile{1, 1, 1, 1});
    CHECK(zero_block_profile(BinarySequence::parse("111")) == BlockProfile{0, 0, 0, 0});
    CHECK(zero_block_profile(BinarySequence()) == BlockProfile{0, 0, 0, 0});
    // lengths other than 1,2,4,5 are ignored
    CHECK(zero_block_profile(BinarySequence::parse("000")) == BlockProfile{0, 0, 0, 0});
}

TEST_CASE("profile_decompose") {
    CHECK(profile_decompose({1, 1, 1, 1}) == ProfileDecomposition{{2, 0, 0, 2}, 1});
    CHECK(profile_decompose({2, 0, 0, 2}) == ProfileDecomposition{{2, 0, 0, 2}, 0});
    CHECK(profile_decompose({0, 3, 2, 7}) == ProfileDecomposition{{2, 1, 0, 9}, 2});
}

TEST_CASE("profile decomposition is unique on a grid") {
    // every base in H_a u H_b plus k*e decomposes back to exactly (base, k)
    for (long n1 = 0; n1 <= 4; ++n1) {
        for (long n5 = 0; n5 <= 4; ++n5) {
            for (long other = 0; other <= 4; ++other) {
                for (int side = 0; side < 2; ++side) {
                    BlockProfile base = side == 0 ? BlockProfile{n1, 0, other, n5}
                                                  : BlockProfile{n1, other, 0, n5};
                    for (long k = 0; k <= 4; ++k) {
                        BlockProfile p = shifted(base, k);
                        if (!p.valid()) continue;
                        ProfileDecomposition d = profile_decompose(p);
                        // (base, k) is recoverable unless base is in both
                        // H_a and H_b trivially
                        CHECK(shifted(d.m, d.k) == p);
                        CHECK((d.m.n2 == 0 || d.m.n4 == 0));
                        if (base.n2 == 0 && base.n4 == 0) {
                            CHECK(d.m == base);
                            CHECK(d.k == k);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("transfer reproduces the worked moves") {
    BinarySequence x3 = BinarySequence::parse("0101000001100000");
    // second 5-block, first 1-block
    CHECK(transfer(x3, {1, 0}) == BinarySequence::parse("0010100000110000"));
    BinarySequence x2 = BinarySequence::parse("1011000001");
    CHECK(transfer(x2, {0, 0}) == BinarySequence::parse("1001100001"));
    CHECK(zero_block_profile(transfer(x3, {1, 0})) == BlockProfile{1, 1, 1, 1});
}

TEST_CASE("transfer rejects ineligible strings and bad ordinals") {
    // 4-block plus 1-block: no 5-block to shrink
    CHECK_THROWS_AS(transfer(BinarySequence::parse("0100001"), {0, 0}), NoEligibleBlockError);
    CHECK_THROWS_AS(transfer(BinarySequence::parse("111"), {0, 0}), NoEligibleBlockError);
    // 0 1 00000 1 0: one 5-block, two 1-blocks
    BinarySequence x = BinarySequence::parse("010000010");
    CHECK_THROWS_AS(transfer(x, {1, 0}), std::out_of_range);
    CHECK_THROWS_AS(transfer(x, {0, 5}), std::out_of_range);
    CHECK_THROWS_AS(transfer(x, {-1, 0}), std::out_of_range);
}

TEST_CASE("transfer preserves length and symbols and shifts the profile") {
    RngStream rng(22, 0);
    int done = 0;
    while (done < 120) {
        BinarySequence x = iid_sequence(30 + static_cast<long>(rng.next_below(60)), rng);
        BlockProfile p = zero_block_profile(x);
        if (p.n5 < 1 || p.n1 < 1) continue;
        ++done;
        TransferChoice c{static_cast<long>(rng.next_below(static_cast<uint64_t>(p.n5))),
                         static_cast<long>(rng.next_below(static_cast<uint64_t>(p.n1)))};
        BinarySequence t = transfer(x, c);
        CHECK(t.size() == x.size());
        CHECK(t.ones() == x.ones());
        CHECK(zero_block_profile(t) == shifted(p, 1));
    }
}

TEST_CASE("expected_block_count matches hand enumeration at tiny n") {
    // n=3, i=1: strings 010 (2), 011, 101, 110 (1 each) -> 5/8
    CHECK(expected_block_count(3, 1) == Rational(5, 8));
    CHECK(expected_block_count(2, 1) == Rational(1, 2));
    CHECK(expected_block_count(1, 1) == Rational(1, 2));
    CHECK(expected_block_count(5, 5) == Rational(1, 32));
    CHECK(expected_block_count(16, 1) == Rational(9, 4));
    CHECK(expected_block_count(16, 5) == Rational(7, 64));
    CHECK_THROWS_AS(expected_block_count(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(expected_block_count(4, 0), std::invalid_argument);
}

TEST_CASE("expected_block_count equals full enumeration for small n") {
    for (int n = 1; n <= 12; ++n) {
        oracles::ProfileStats st = oracles::exact_profile_stats(n);
        CHECK(st.mean_n1 == expected_block_count(n, 1));
        if (n >= 2) CHECK(st.mean_n2 == expected_block_count(n, 2));
        if (n >= 4) CHECK(st.mean_n4 == expected_block_count(n, 4));
        if (n >= 5) CHECK(st.mean_n5 == expected_block_count(n, 5));
    }
}

TEST_CASE("block-count means stay within i of n/2^(i+2)") {
    for (long n : {1L, 2L, 7L, 100L, 12345L, 1000000L}) {
        for (long i : {1L, 2L, 4L, 5L}) {
            if (i > n) continue;
            Rational gap = (expected_block_count(n, i) -
                            Rational(BigInt(n), BigInt::pow2(static_cast<unsigned>(i + 2))))
                               .abs();
            CHECK(gap <= Rational(i));
        }
    }
}
