// Independent brute-force and exhaustive-enumeration verifiers. These share
// no scoring or DP code with the library paths they check: the brute-force
// aligner enumerates alignments outright, the profile oracles enumerate all
// 2^n strings, and every verdict is exact (rational arithmetic, certified log
// enclosures for entropy bounds).

#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alignsim/blocks.hpp"
#include "alignsim/logbounds.hpp"
#include "alignsim/rational.hpp"
#include "alignsim/rng.hpp"
#include "alignsim/sequence.hpp"

namespace alignsim::oracles {

inline constexpr long kBruteForceSizeLimit = 24; // |x| + |y|

// Exhaustive maximum over all monotone pairings. Throws SizeGuardError above
// the limit.
Rational brute_force_score(const BinarySequence& x, const BinarySequence& y,
                           const ScoringScheme& scheme);

// Calls fn once per score-optimal alignment (two enumeration passes).
void for_each_optimal_alignment(const BinarySequence& x, const BinarySequence& y,
                                const ScoringScheme& scheme,
                                const std::function<void(const AlignmentPairs&)>& fn);

struct BruteForceResult {
    Rational score;
    std::vector<AlignmentPairs> optima;
};
BruteForceResult brute_force_optimal(const BinarySequence& x, const BinarySequence& y,
                                     const ScoringScheme& scheme);

// Integer-valued random variable with exact rational weights. Support is
// strictly increasing; weights are positive and sum to one.
struct FiniteDistribution {
    std::vector<long long> support;
    std::vector<Rational> weights;

    void validate() const;
    Rational mean() const;
    Rational variance() const;
    Rational weight_at(long long v) const; // zero off-support
    static FiniteDistribution uniform_on(long long lo, long long hi);
};

// Nondecreasing integer map on a contiguous domain.
struct StepFunction {
    long long domain_lo = 0;
    std::vector<long long> values; // f(domain_lo + t) = values[t]

    long long domain_hi() const { return domain_lo + static_cast<long long>(values.size()) - 1; }
    long long at(long long i) const { return values.at(static_cast<size_t>(i - domain_lo)); }
};

// Var[f(B)] >= c^2 (1 - 2m / (c sqrt(Var B))) Var B, checked exactly via the
// squared rearrangement, under the two slope conditions on f.
struct VarianceTransferReport {
    bool preconditions_ok = false;
    std::string precondition_issue;
    bool holds = false;
    Rational var_fB, var_B;
    double bound_value = 0; // display only
};
VarianceTransferReport verify_variance_transfer(const StepFunction& f, const FiniteDistribution& B,
                                                const Rational& c, long m);

// Var[W] >= n (ln 2)^2 / (16 kappa^2) for W supported on an interval of
// diameter >= 3 kappa ln2 sqrt(n) whose consecutive probabilities are within
// a (1 - kappa/sqrt(n)) factor of each other. Preconditions and conclusion
// are certified (ln 2 enclosure); tri-state where an enclosure straddles.
struct LogLipschitzReport {
    std::optional<bool> preconditions_ok;
    std::string precondition_issue;
    std::optional<bool> holds;
    Rational var_W;
    double bound_value = 0; // display only
};
LogLipschitzReport verify_log_lipschitz_variance(const FiniteDistribution& W,
                                                 const Rational& kappa, long n);

using ProfileKey = std::array<long, 4>;

// Exact joint law of (N1,N2,N4,N5) over all 2^n strings, the exact means, and
// the probability of the concentration box {|N_i - mu_i| <= sqrt(55n/4)}.
struct ProfileStats {
    int n = 0;
    unsigned long long total = 0; // 2^n
    std::map<ProfileKey, unsigned long long> histogram;
    Rational mean_n1, mean_n2, mean_n4, mean_n5;
    Rational p_box;

    unsigned long long class_size(const BlockProfile& p) const;
};
ProfileStats exact_profile_stats(int n); // guard: n <= 20

// Checks count(p+e)/count(p) = n1*n5 / ((n2+1)(n4+1)) for every profile pair
// realised at length n. Counterexamples, if any, are listed.
struct RatioSweepResult {
    int n = 0;
    long pairs_checked = 0;
    std::vector<std::string> counterexamples;
    bool ok() const { return counterexamples.empty(); }
};
RatioSweepResult profile_count_ratio(int n); // guard: n <= 18

// Propagates the exact uniform distribution on class(m) through k transfer
// steps and checks exact uniformity on class(m + k e).
struct ChainUniformityResult {
    bool feasible = false;
    bool uniform = false;
    std::string detail;
    bool ok() const { return feasible && uniform; }
};
ChainUniformityResult chain_uniformity_check(int n, const BlockProfile& m, int k); // n <= 14

// All feasible (m, k <= kmax) at length n in one enumeration pass.
struct ChainSweepResult {
    int n = 0;
    long cases_checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};
ChainSweepResult chain_uniformity_sweep(int n, int kmax); // n <= 14

// Random admissible instance for verify_variance_transfer: increments drawn
// in {0,1} with zero-runs capped so the slope condition provably holds for
// the chosen (c, m); B is a random distribution on the domain.
struct VarianceTransferInstance {
    StepFunction f;
    FiniteDistribution B;
    Rational c;
    long m = 0;
};
VarianceTransferInstance random_variance_transfer_instance(RngStream& rng);

// |V^k| counted by a compositions DP (cross-checked against the closed form)
// and compared against the entropy bound. The bound with the binomial
// exponent 2k*H(eps/4) is the verdict; the printed variant with exponent
// k*H(eps/4) is evaluated alongside for reference.
struct VkBoundReport {
    int k = 0;
    Rational eps;
    BigInt count;
    std::optional<bool> holds;
    std::optional<bool> printed_bound_holds;
    double log_count = 0, log_bound = 0, log_printed_bound = 0;
};
VkBoundReport count_Vk_and_bound(int k, const Rational& eps);

} // namespace alignsim::oracles
