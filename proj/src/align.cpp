#include "alignsim/align.hpp"

#include <algorithm>

namespace alignsim {

ScaledScheme ScaledScheme::from(const ScoringScheme& scheme) {
    const Rational* vals[5] = {&scheme.s00, &scheme.s01, &scheme.s10, &scheme.s11, &scheme.q};
    BigInt l(1);
    for (const Rational* v : vals) {
        BigInt d = v->den();
        l = l / BigInt::gcd(l, d) * d;
    }
    ScaledScheme ss;
    ss.scale = l;
    auto scaled = [&](const Rational& v) {
        BigInt s = v.num() * (l / v.den());
        if (!s.fits_int64()) throw std::overflow_error("ScoringScheme: scaled score overflows int64");
        return s.to_int64();
    };
    ss.s[0][0] = scaled(scheme.s00);
    ss.s[0][1] = scaled(scheme.s01);
    ss.s[1][0] = scaled(scheme.s10);
    ss.s[1][1] = scaled(scheme.s11);
    ss.q = scaled(scheme.q);
    return ss;
}

namespace dp {

void forward(const BinarySequence& x, const BinarySequence& y, const ScaledScheme& ss,
             std::vector<int64_t>& table) {
    const size_t n = x.size(), m = y.size(), w = m + 1;
    table.assign((n + 1) * w, 0);
    for (size_t j = 1; j <= m; ++j) table[j] = table[j - 1] + ss.q;
    for (size_t i = 1; i <= n; ++i) {
        int64_t* row = table.data() + i * w;
        const int64_t* up = row - w;
        row[0] = up[0] + ss.q;
        const int64_t* sx = ss.s[x[i - 1]];
        for (size_t j = 1; j <= m; ++j) {
            int64_t best = up[j - 1] + sx[y[j - 1]];
            best = std::max(best, up[j] + ss.q);
            best = std::max(best, row[j - 1] + ss.q);
            row[j] = best;
        }
    }
}

void backward(const BinarySequence& x, const BinarySequence& y, const ScaledScheme& ss,
              std::vector<int64_t>& table) {
    const size_t n = x.size(), m = y.size(), w = m + 1;
    table.assign((n + 1) * w, 0);
    int64_t* last = table.data() + n * w;
    for (size_t j = m; j-- > 0;) last[j] = last[j + 1] + ss.q;
    for (size_t i = n; i-- > 0;) {
        int64_t* row = table.data() + i * w;
        const int64_t* down = row + w;
        row[m] = down[m] + ss.q;
        const int64_t* sx = ss.s[x[i]];
        for (size_t j = m; j-- > 0;) {
            int64_t best = down[j + 1] + sx[y[j]];
            best = std::max(best, down[j] + ss.q);
            best = std::max(best, row[j + 1] + ss.q);
            row[j] = best;
        }
    }
}

int64_t score(const BinarySequence& x, const BinarySequence& y, const ScaledScheme& ss) {
    const size_t n = x.size(), m = y.size();
    std::vector<int64_t> prev(m + 1), cur(m + 1);
    for (size_t j = 1; j <= m; ++j) prev[j] = prev[j - 1] + ss.q;
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = prev[0] + ss.q;
        const int64_t* sx = ss.s[x[i - 1]];
        for (size_t j = 1; j <= m; ++j) {
            int64_t best = prev[j - 1] + sx[y[j - 1]];
            best = std::max(best, prev[j] + ss.q);
            best = std::max(best, cur[j - 1] + ss.q);
            cur[j] = best;
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

} // namespace dp

Rational score_of_alignment(const BinarySequence& x, const BinarySequence& y,
                            const AlignmentPairs& a, const ScoringScheme& scheme) {
    validate_alignment(x, y, a);
    Rational total(0);
    for (const auto& [pi, nu] : a.pairs) total += scheme.score(x[pi - 1], y[nu - 1]);
    long gapped = static_cast<long>(x.size()) + static_cast<long>(y.size()) -
                  2 * static_cast<long>(a.pairs.size());
    total += scheme.q * Rational(gapped);
    return total;
}

Rational optimal_score(const BinarySequence& x, const BinarySequence& y,
                       const ScoringScheme& scheme) {
    ScaledScheme ss = ScaledScheme::from(scheme);
    return ss.unscale(dp::score(x, y, ss));
}

AlignmentPairs optimal_traceback(const BinarySequence& x, const BinarySequence& y,
                                 const ScoringScheme& scheme) {
    ScaledScheme ss = ScaledScheme::from(scheme);
    std::vector<int64_t> table;
    dp::forward(x, y, ss, table);
    const size_t m = y.size(), w = m + 1;
    size_t i = x.size(), j = m;
    AlignmentPairs out;
    while (i > 0 || j > 0) {
        int64_t here = table[i * w + j];
        if (i > 0 && j > 0 &&
            here == table[(i - 1) * w + (j - 1)] + ss.s[x[i - 1]][y[j - 1]]) {
            out.pairs.emplace_back(static_cast<long>(i), static_cast<long>(j));
            --i;
            --j;
        } else if (j > 0 && here == table[i * w + (j - 1)] + ss.q) {
            --j;
        } else {
            --i;
        }
    }
    std::reverse(out.pairs.begin(), out.pairs.end());
    return out;
}

long min_matched_ones_among_optimal(const BinarySequence& x, const BinarySequence& y,
                                    const ScoringScheme& scheme) {
    // Lexicographic DP: maximize score, then minimize 1-1 pairs among optima.
    ScaledScheme ss = ScaledScheme::from(scheme);
    const size_t n = x.size(), m = y.size(), w = m + 1;
    std::vector<int64_t> sc((n + 1) * w, 0);
    std::vector<int32_t> on((n + 1) * w, 0);
    for (size_t j = 1; j <= m; ++j) sc[j] = sc[j - 1] + ss.q;
    for (size_t i = 1; i <= n; ++i) {
        int64_t* srow = sc.data() + i * w;
        int32_t* orow = on.data() + i * w;
        const int64_t* sup = srow - w;
        const int32_t* oup = orow - w;
        srow[0] = sup[0] + ss.q;
        orow[0] = 0;
        const bool xi_one = x[i - 1] == 1;
        const int64_t* sx = ss.s[x[i - 1]];
        for (size_t j = 1; j <= m; ++j) {
            int64_t best = sup[j - 1] + sx[y[j - 1]];
            int32_t ones = oup[j - 1] + ((xi_one && y[j - 1] == 1) ? 1 : 0);
            int64_t cand = sup[j] + ss.q;
            if (cand > best || (cand == best && oup[j] < ones)) {
                best = cand;
                ones = oup[j];
            }
            cand = srow[j - 1] + ss.q;
            if (cand > best || (cand == best && orow[j - 1] < ones)) {
                best = cand;
                ones = orow[j - 1];
            }
            srow[j] = best;
            orow[j] = ones;
        }
    }
    return on[n * w + m];
}

long matched_ones_count(const BinarySequence& x, const BinarySequence& y,
                        const AlignmentPairs& a) {
    long c = 0;
    for (const auto& [pi, nu] : a.pairs)
        if (x[pi - 1] == 1 && y[nu - 1] == 1) ++c;
    return c;
}

AlignmentPairs matched_ones_alignment(const BinarySequence& x, const BinarySequence& y) {
    std::vector<long> ox, oy; // 1-based positions of the ones
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] == 1) ox.push_back(static_cast<long>(i + 1));
    for (size_t i = 0; i < y.size(); ++i)
        if (y[i] == 1) oy.push_back(static_cast<long>(i + 1));
    const size_t k = std::min(ox.size(), oy.size());

    AlignmentPairs out;
    auto zeros_between = [](const BinarySequence& s, long lo, long hi) {
        // 1-based, exclusive bounds
        std::vector<long> z;
        for (long p = lo + 1; p < hi; ++p)
            if (s[p - 1] == 0) z.push_back(p);
        return z;
    };
    long px = 0, py = 0;
    for (size_t i = 0; i <= k; ++i) {
        long nx = i < k ? ox[i] : static_cast<long>(x.size()) + 1;
        long ny = i < k ? oy[i] : static_cast<long>(y.size()) + 1;
        auto zx = zeros_between(x, px, nx);
        auto zy = zeros_between(y, py, ny);
        size_t t = std::min(zx.size(), zy.size());
        for (size_t j = 0; j < t; ++j) out.pairs.emplace_back(zx[j], zy[j]);
        if (i < k) {
            out.pairs.emplace_back(ox[i], oy[i]);
            px = ox[i];
            py = oy[i];
        }
    }
    return out;
}

} // namespace alignsim
