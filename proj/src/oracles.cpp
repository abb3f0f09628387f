#include "alignsim/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "alignsim/rng.hpp"

namespace alignsim::oracles {

namespace {

// The brute-force aligner keeps its own integer scaling of the scheme (plain
// product of denominators) so it shares no scoring code with the DP path.
struct IntScheme {
    long long s[2][2];
    long long q;
    BigInt den;
};

IntScheme int_scheme(const ScoringScheme& scheme) {
    BigInt den = scheme.s00.den() * scheme.s01.den() * scheme.s10.den() * scheme.s11.den() *
                 scheme.q.den();
    IntScheme out;
    out.den = den;
    auto conv = [&](const Rational& v) {
        BigInt s = v.num() * (den / v.den());
        if (!s.fits_int64()) throw std::overflow_error("brute force: scaled score overflows");
        return s.to_int64();
    };
    out.s[0][0] = conv(scheme.s00);
    out.s[0][1] = conv(scheme.s01);
    out.s[1][0] = conv(scheme.s10);
    out.s[1][1] = conv(scheme.s11);
    out.q = conv(scheme.q);
    return out;
}

void guard_size(const BinarySequence& x, const BinarySequence& y) {
    if (static_cast<long>(x.size() + y.size()) > kBruteForceSizeLimit)
        throw SizeGuardError("brute force: |x|+|y| exceeds the enumeration guard");
}

// Visits every monotone pairing exactly once, reporting its pair-sum score
// (the q term for unpaired symbols is added by the caller from the pair
// count).
template <typename Fn>
void scan_alignments(const BinarySequence& x, const BinarySequence& y, const IntScheme& sch,
                     Fn&& fn) {
    const long n = static_cast<long>(x.size());
    const long m = static_cast<long>(y.size());
    std::vector<std::pair<long, long>> stack;

    auto rec = [&](auto&& self, long i, long j, long long pair_sum) -> void {
        fn(pair_sum, stack);
        for (long p = i; p < n; ++p) {
            for (long q = j; q < m; ++q) {
                stack.emplace_back(p + 1, q + 1);
                self(self, p + 1, q + 1, pair_sum + sch.s[x[p]][y[q]]);
                stack.pop_back();
            }
        }
    };
    rec(rec, 0, 0, 0);
}

} // namespace

Rational brute_force_score(const BinarySequence& x, const BinarySequence& y,
                           const ScoringScheme& scheme) {
    guard_size(x, y);
    IntScheme sch = int_scheme(scheme);
    const long long nm = static_cast<long long>(x.size() + y.size());
    long long best = std::numeric_limits<long long>::min();
    scan_alignments(x, y, sch, [&](long long pair_sum, const auto& stack) {
        long long total = pair_sum + sch.q * (nm - 2 * static_cast<long long>(stack.size()));
        best = std::max(best, total);
    });
    return Rational(BigInt(best), sch.den);
}

void for_each_optimal_alignment(const BinarySequence& x, const BinarySequence& y,
                                const ScoringScheme& scheme,
                                const std::function<void(const AlignmentPairs&)>& fn) {
    guard_size(x, y);
    IntScheme sch = int_scheme(scheme);
    const long long nm = static_cast<long long>(x.size() + y.size());
    long long best = std::numeric_limits<long long>::min();
    scan_alignments(x, y, sch, [&](long long pair_sum, const auto& stack) {
        long long total = pair_sum + sch.q * (nm - 2 * static_cast<long long>(stack.size()));
        best = std::max(best, total);
    });
    scan_alignments(x, y, sch, [&](long long pair_sum, const auto& stack) {
        long long total = pair_sum + sch.q * (nm - 2 * static_cast<long long>(stack.size()));
        if (total == best) {
            AlignmentPairs a;
            a.pairs = stack;
            fn(a);
        }
    });
}

BruteForceResult brute_force_optimal(const BinarySequence& x, const BinarySequence& y,
                                     const ScoringScheme& scheme) {
    BruteForceResult out;
    out.score = brute_force_score(x, y, scheme);
    for_each_optimal_alignment(x, y, scheme,
                               [&](const AlignmentPairs& a) { out.optima.push_back(a); });
    return out;
}

// ---------------------------------------------------------------------------

void FiniteDistribution::validate() const {
    if (support.size() != weights.size() || support.empty())
        throw std::invalid_argument("FiniteDistribution: support/weight size mismatch");
    Rational sum(0);
    for (size_t i = 0; i < support.size(); ++i) {
        if (i + 1 < support.size() && support[i] >= support[i + 1])
            throw std::invalid_argument("FiniteDistribution: support must be strictly increasing");
        if (weights[i].sign() <= 0)
            throw std::invalid_argument("FiniteDistribution: weights must be positive");
        sum += weights[i];
    }
    if (sum != Rational(1)) throw std::invalid_argument("FiniteDistribution: weights must sum to 1");
}

Rational FiniteDistribution::mean() const {
    Rational m(0);
    for (size_t i = 0; i < support.size(); ++i) m += weights[i] * Rational(support[i]);
    return m;
}

Rational FiniteDistribution::variance() const {
    Rational m = mean(), v(0);
    for (size_t i = 0; i < support.size(); ++i) {
        Rational d = Rational(support[i]) - m;
        v += weights[i] * d * d;
    }
    return v;
}

Rational FiniteDistribution::weight_at(long long v) const {
    auto it = std::lower_bound(support.begin(), support.end(), v);
    if (it == support.end() || *it != v) return Rational(0);
    return weights[static_cast<size_t>(it - support.begin())];
}

FiniteDistribution FiniteDistribution::uniform_on(long long lo, long long hi) {
    if (hi < lo) throw std::invalid_argument("uniform_on: empty interval");
    FiniteDistribution d;
    long long size = hi - lo + 1;
    for (long long v = lo; v <= hi; ++v) {
        d.support.push_back(v);
        d.weights.emplace_back(1, size);
    }
    return d;
}

VarianceTransferReport verify_variance_transfer(const StepFunction& f, const FiniteDistribution& B,
                                                const Rational& c, long m) {
    VarianceTransferReport rep;
    B.validate();
    if (c.sign() <= 0 || m <= 0) {
        rep.precondition_issue = "c and m must be positive";
        return rep;
    }
    if (f.values.empty() || B.support.front() < f.domain_lo || B.support.back() > f.domain_hi()) {
        rep.precondition_issue = "support of B leaves the domain of f";
        return rep;
    }
    for (size_t t = 1; t < f.values.size(); ++t) {
        long long d = f.values[t] - f.values[t - 1];
        if (d < 0) {
            rep.precondition_issue = "f is not nondecreasing";
            return rep;
        }
        if (d > 1) {
            rep.precondition_issue = "f(j)-f(i) <= j-i violated";
            return rep;
        }
    }
    const long long lo = f.domain_lo, hi = f.domain_hi();
    for (long long i = lo; i <= hi; ++i) {
        for (long long j = i + m; j <= hi; ++j) {
            if (Rational(f.at(j) - f.at(i)) < c * Rational(j - i)) {
                rep.precondition_issue = "f(j)-f(i) >= c(j-i) violated for some j >= i+m";
                return rep;
            }
        }
    }
    rep.preconditions_ok = true;

    rep.var_B = B.variance();
    // Var over f(B): push weights through f
    {
        Rational mean(0);
        for (size_t i = 0; i < B.support.size(); ++i)
            mean += B.weights[i] * Rational(f.at(B.support[i]));
        Rational var(0);
        for (size_t i = 0; i < B.support.size(); ++i) {
            Rational d = Rational(f.at(B.support[i])) - mean;
            var += B.weights[i] * d * d;
        }
        rep.var_fB = var;
    }
    // Var f(B) >= c^2 VarB - 2 m c sqrt(VarB), squared to stay rational
    Rational lhs_gap = c * c * rep.var_B - rep.var_fB;
    if (lhs_gap.sign() <= 0) {
        rep.holds = true;
    } else {
        rep.holds = lhs_gap * lhs_gap <= Rational(4) * Rational(m) * Rational(m) * c * c * rep.var_B;
    }
    double vb = rep.var_B.to_double();
    double cc = c.to_double();
    rep.bound_value = cc * cc * (1.0 - 2.0 * static_cast<double>(m) / (cc * std::sqrt(vb))) * vb;
    return rep;
}

LogLipschitzReport verify_log_lipschitz_variance(const FiniteDistribution& W,
                                                 const Rational& kappa, long n) {
    LogLipschitzReport rep;
    W.validate();
    if (kappa.sign() <= 0 || n < 1) {
        rep.preconditions_ok = false;
        rep.precondition_issue = "kappa must be positive and n >= 1";
        return rep;
    }
    const long long lo = W.support.front(), hi = W.support.back();
    const Rational diam(hi - lo);

    // diameter >= 3 kappa ln2 sqrt(n)  <=>  diam^2 >= 9 kappa^2 (ln2)^2 n
    RatInterval ln2sq = ln2_interval() * ln2_interval();
    Rational lhs = diam * diam / (Rational(9) * kappa * kappa * Rational(n));
    std::optional<bool> diam_ok;
    if (lhs >= ln2sq.hi)
        diam_ok = true;
    else if (lhs < ln2sq.lo)
        diam_ok = false;

    if (!diam_ok.has_value()) {
        rep.preconditions_ok = std::nullopt;
        rep.precondition_issue = "diameter condition not certifiable at this precision";
        return rep;
    }
    if (!*diam_ok) {
        rep.preconditions_ok = false;
        rep.precondition_issue = "support diameter below 3 kappa ln2 sqrt(n)";
        return rep;
    }

    // P(W=i+1) >= P(W=i)(1 - kappa/sqrt(n)) and vice versa, for all i in J;
    // each direction is checked via the squared form to stay exact.
    auto ratio_ok = [&](const Rational& a, const Rational& b) {
        // a >= b (1 - kappa/sqrt(n))
        if (a >= b) return true;
        Rational gap = b - a;
        return gap * gap * Rational(n) <= b * b * kappa * kappa;
    };
    for (long long i = lo; i < hi; ++i) {
        Rational pi = W.weight_at(i), pj = W.weight_at(i + 1);
        if (!ratio_ok(pj, pi) || !ratio_ok(pi, pj)) {
            rep.preconditions_ok = false;
            rep.precondition_issue = "consecutive-probability ratio condition violated";
            return rep;
        }
    }
    rep.preconditions_ok = true;

    rep.var_W = W.variance();
    // Var W >= n (ln2)^2 / (16 kappa^2)
    Rational scaled = rep.var_W * Rational(16) * kappa * kappa / Rational(n);
    if (scaled >= ln2sq.hi)
        rep.holds = true;
    else if (scaled < ln2sq.lo)
        rep.holds = false;
    rep.bound_value = static_cast<double>(n) * 0.4804530139182014 / (16.0 * kappa.to_double() * kappa.to_double());
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

ProfileKey profile_of_mask(uint32_t mask, int n) {
    // zero blocks = runs of clear bits
    ProfileKey key{0, 0, 0, 0};
    int i = 0;
    while (i < n) {
        if (mask & (1u << i)) {
            ++i;
            continue;
        }
        int j = i;
        while (j < n && !(mask & (1u << j))) ++j;
        switch (j - i) {
            case 1: ++key[0]; break;
            case 2: ++key[1]; break;
            case 4: ++key[2]; break;
            case 5: ++key[3]; break;
            default: break;
        }
        i = j;
    }
    return key;
}

BinarySequence mask_to_sequence(uint32_t mask, int n) {
    std::vector<Bit> bits(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) bits[static_cast<size_t>(i)] = (mask >> i) & 1u;
    return BinarySequence(std::move(bits));
}

uint32_t sequence_to_mask(const BinarySequence& s) {
    uint32_t m = 0;
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i]) m |= (1u << i);
    return m;
}

} // namespace

unsigned long long ProfileStats::class_size(const BlockProfile& p) const {
    auto it = histogram.find(p.as_array());
    return it == histogram.end() ? 0ull : it->second;
}

ProfileStats exact_profile_stats(int n) {
    if (n < 1 || n > 20) throw SizeGuardError("exact_profile_stats: n must be in [1,20]");
    ProfileStats st;
    st.n = n;
    st.total = 1ull << n;
    for (uint32_t mask = 0; mask < (1ull << n); ++mask) ++st.histogram[profile_of_mask(mask, n)];

    unsigned long long sums[4] = {0, 0, 0, 0};
    for (const auto& [key, count] : st.histogram)
        for (int i = 0; i < 4; ++i) sums[i] += count * static_cast<unsigned long long>(key[i]);
    BigInt total(static_cast<unsigned long long>(st.total));
    st.mean_n1 = Rational(BigInt(sums[0]), total);
    st.mean_n2 = Rational(BigInt(sums[1]), total);
    st.mean_n4 = Rational(BigInt(sums[2]), total);
    st.mean_n5 = Rational(BigInt(sums[3]), total);

    // box of eq-(IC): all four counts within sqrt(55 n / 4) of their means
    const int lens[4] = {1, 2, 4, 5};
    Rational mus[4];
    for (int i = 0; i < 4; ++i)
        mus[i] = lens[i] <= n ? expected_block_count(n, lens[i]) : Rational(0);
    Rational band(55 * n, 4);
    unsigned long long inside = 0;
    for (const auto& [key, count] : st.histogram) {
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            Rational d = Rational(key[i]) - mus[i];
            ok = d * d <= band;
        }
        if (ok) inside += count;
    }
    st.p_box = Rational(BigInt(inside), total);
    return st;
}

RatioSweepResult profile_count_ratio(int n) {
    if (n < 1 || n > 18) throw SizeGuardError("profile_count_ratio: n must be in [1,18]");
    ProfileStats st = exact_profile_stats(n);
    RatioSweepResult out;
    out.n = n;
    for (const auto& [key, count] : st.histogram) {
        const long n1 = key[0], n2 = key[1], n4 = key[2], n5 = key[3];
        if (n1 < 1 || n5 < 1) continue; // p+e not a valid profile
        ProfileKey succ{n1 - 1, n2 + 1, n4 + 1, n5 - 1};
        auto it = st.histogram.find(succ);
        unsigned long long succ_count = it == st.histogram.end() ? 0ull : it->second;
        ++out.pairs_checked;
        // count(p+e) (n2+1)(n4+1) = count(p) n1 n5
        unsigned long long lhs = succ_count * static_cast<unsigned long long>(n2 + 1) *
                                 static_cast<unsigned long long>(n4 + 1);
        unsigned long long rhs = count * static_cast<unsigned long long>(n1) *
                                 static_cast<unsigned long long>(n5);
        if (lhs != rhs) {
            out.counterexamples.push_back(
                "n=" + std::to_string(n) + " profile=(" + std::to_string(n1) + "," +
                std::to_string(n2) + "," + std::to_string(n4) + "," + std::to_string(n5) +
                ") count=" + std::to_string(count) + " succ=" + std::to_string(succ_count));
        }
    }
    return out;
}

namespace {

std::map<ProfileKey, std::vector<uint32_t>> classes_at(int n) {
    std::map<ProfileKey, std::vector<uint32_t>> classes;
    for (uint32_t mask = 0; mask < (1ull << n); ++mask)
        classes[profile_of_mask(mask, n)].push_back(mask);
    return classes;
}

// One exact transfer step of the distribution over class members.
std::unordered_map<uint32_t, Rational> propagate(const std::unordered_map<uint32_t, Rational>& dist,
                                                 int n) {
    std::unordered_map<uint32_t, Rational> next;
    for (const auto& [mask, prob] : dist) {
        BinarySequence x = mask_to_sequence(mask, n);
        auto fives = zero_blocks_of_length(x, 5);
        auto singles = zero_blocks_of_length(x, 1);
        Rational share = prob / Rational(static_cast<long long>(fives.size() * singles.size()));
        for (size_t a = 0; a < fives.size(); ++a) {
            for (size_t b = 0; b < singles.size(); ++b) {
                TransferChoice choice{static_cast<long>(a), static_cast<long>(b)};
                uint32_t to = sequence_to_mask(transfer(x, choice));
                auto [it, inserted] = next.try_emplace(to, share);
                if (!inserted) it->second += share;
            }
        }
    }
    return next;
}

bool is_uniform_on(const std::unordered_map<uint32_t, Rational>& dist,
                   const std::vector<uint32_t>& cls) {
    if (dist.size() != cls.size()) return false;
    Rational expect(1, static_cast<long long>(cls.size()));
    for (uint32_t mask : cls) {
        auto it = dist.find(mask);
        if (it == dist.end() || it->second != expect) return false;
    }
    return true;
}

} // namespace

ChainUniformityResult chain_uniformity_check(int n, const BlockProfile& m, int k) {
    if (n < 1 || n > 14) throw SizeGuardError("chain_uniformity_check: n must be in [1,14]");
    auto classes = classes_at(n);
    auto it = classes.find(m.as_array());
    if (it == classes.end())
        throw std::invalid_argument("chain_uniformity_check: empty class for this profile");

    ChainUniformityResult out;
    std::unordered_map<uint32_t, Rational> dist;
    Rational w(1, static_cast<long long>(it->second.size()));
    for (uint32_t mask : it->second) dist.emplace(mask, w);

    BlockProfile cur = m;
    for (int step = 0; step < k; ++step) {
        if (cur.n5 < 1 || cur.n1 < 1) {
            out.detail = "no eligible block at step " + std::to_string(step);
            return out;
        }
        dist = propagate(dist, n);
        cur = shifted(cur, 1);
    }
    out.feasible = true;
    auto target = classes.find(cur.as_array());
    if (target == classes.end()) {
        out.detail = "target class empty";
        return out;
    }
    out.uniform = is_uniform_on(dist, target->second);
    if (!out.uniform) out.detail = "propagated distribution not uniform on target class";
    return out;
}

ChainSweepResult chain_uniformity_sweep(int n, int kmax) {
    if (n < 1 || n > 14) throw SizeGuardError("chain_uniformity_sweep: n must be in [1,14]");
    auto classes = classes_at(n);
    ChainSweepResult out;
    out.n = n;
    for (const auto& [key, members] : classes) {
        BlockProfile m{key[0], key[1], key[2], key[3]};
        std::unordered_map<uint32_t, Rational> dist;
        Rational w(1, static_cast<long long>(members.size()));
        for (uint32_t mask : members) dist.emplace(mask, w);

        BlockProfile cur = m;
        for (int k = 1; k <= kmax; ++k) {
            if (cur.n5 < 1 || cur.n1 < 1) break; // chain not feasible beyond here
            dist = propagate(dist, n);
            cur = shifted(cur, 1);
            ++out.cases_checked;
            auto target = classes.find(cur.as_array());
            if (target == classes.end() || !is_uniform_on(dist, target->second)) {
                out.failures.push_back("n=" + std::to_string(n) + " m=(" + std::to_string(m.n1) +
                                       "," + std::to_string(m.n2) + "," + std::to_string(m.n4) +
                                       "," + std::to_string(m.n5) + ") k=" + std::to_string(k));
            }
        }
    }
    return out;
}

VarianceTransferInstance random_variance_transfer_instance(RngStream& rng) {
    VarianceTransferInstance inst;
    // zero-runs capped at 2, so any window of length L carries at least
    // floor(L/3) unit increments; that makes (1/6, 6) and (1/4, 12) admissible
    if (rng.next_bit()) {
        inst.c = Rational(1, 6);
        inst.m = 6;
    } else {
        inst.c = Rational(1, 4);
        inst.m = 12;
    }
    const long len = 24 + static_cast<long>(rng.next_below(41)); // domain size 24..64
    inst.f.domain_lo = static_cast<long long>(rng.next_below(21)) - 10;
    long long v = static_cast<long long>(rng.next_below(9)) - 4;
    inst.f.values.push_back(v);
    int zero_run = 0;
    for (long t = 1; t < len; ++t) {
        int inc = zero_run >= 2 ? 1 : rng.next_bit();
        zero_run = inc == 0 ? zero_run + 1 : 0;
        v += inc;
        inst.f.values.push_back(v);
    }
    // random distribution on a sub-range of the domain
    const long long lo = inst.f.domain_lo;
    const long long hi = inst.f.domain_hi();
    long long blo = lo + static_cast<long long>(rng.next_below(4));
    long long bhi = hi - static_cast<long long>(rng.next_below(4));
    if (bhi < blo) std::swap(blo, bhi);
    std::vector<long> raw;
    long total = 0;
    for (long long s = blo; s <= bhi; ++s) {
        long w = 1 + static_cast<long>(rng.next_below(20));
        raw.push_back(w);
        total += w;
    }
    for (long long s = blo; s <= bhi; ++s) {
        inst.B.support.push_back(s);
        inst.B.weights.emplace_back(raw[static_cast<size_t>(s - blo)], total);
    }
    return inst;
}

VkBoundReport count_Vk_and_bound(int k, const Rational& eps) {
    if (k < 1) throw std::invalid_argument("count_Vk_and_bound: k must be positive");
    VkBoundReport rep;
    rep.k = k;
    rep.eps = eps;

    BigInt budget_floor = (eps * Rational(k) * Rational(1, 2)).floor();
    if (budget_floor > BigInt(100000))
        throw SizeGuardError("count_Vk_and_bound: eps*k/2 too large to enumerate");
    const long s = budget_floor.to_int64();
    const long slots = 2 * k;

    // compositions DP: ways[t] = #(u_1..u_j) in N^j with sum exactly t
    std::vector<BigInt> ways(static_cast<size_t>(s) + 1);
    ways[0] = BigInt(1);
    for (long j = 0; j < slots; ++j) {
        // prefix-sum update realises adding one unbounded slot
        for (long t = 1; t <= s; ++t) ways[static_cast<size_t>(t)] += ways[static_cast<size_t>(t - 1)];
    }
    BigInt count;
    for (long t = 0; t <= s; ++t) count += ways[static_cast<size_t>(t)];
    // stars-and-bars closed form as an internal consistency check
    if (count != BigInt::binomial(static_cast<unsigned long>(s + slots),
                                  static_cast<unsigned long>(slots)))
        throw std::logic_error("count_Vk_and_bound: composition DP disagrees with closed form");
    rep.count = count;

    RatInterval ln_count = RatInterval::point(Rational(0));
    if (count > BigInt(1)) ln_count = ln_interval(Rational(count, BigInt(1)));

    RatInterval h = entropy_interval(eps * Rational(1, 4));
    RatInterval two_term = ln2_interval().scaled(eps * Rational(k) * Rational(1, 2));
    RatInterval exponent = h.scaled(Rational(2 * k)) + two_term;          // 2k H(eps/4) + (eps k/2) ln2
    RatInterval printed = h.scaled(Rational(k)) + two_term;               // k H(eps/4) + (eps k/2) ln2

    auto verdict = [&](const RatInterval& bound) -> std::optional<bool> {
        if (ln_count.hi <= bound.lo) return true;
        if (ln_count.lo > bound.hi) return false;
        return std::nullopt;
    };
    rep.holds = verdict(exponent);
    rep.printed_bound_holds = verdict(printed);
    rep.log_count = ln_count.mid_double();
    rep.log_bound = exponent.mid_double();
    rep.log_printed_bound = printed.mid_double();
    return rep;
}

} // namespace alignsim::oracles
