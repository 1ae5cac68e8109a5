#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qbp/bits.hpp"
#include "qbp/random.hpp"

namespace qbp {

// ---------------------------------------------------------------------------
// Cuts and exact subfunction counting
// ---------------------------------------------------------------------------

// Order theta plus cut position u: X_A holds the first u variables under
// theta. Direct counting accepts any 1 <= u < n; the over-order maximum
// ranges over 1 < u < n.
struct CutPartition {
    std::vector<uint32_t> order;
    size_t u = 1;

    CutPartition() = default;
    CutPartition(std::vector<uint32_t> ord, size_t cut) : order(std::move(ord)), u(cut) {
        std::vector<uint8_t> seen(order.size(), 0);
        for (uint32_t v : order) {
            if (v >= order.size() || seen[v]) throw std::invalid_argument("CutPartition: order is not a permutation");
            seen[v] = 1;
        }
        if (u < 1 || u >= order.size()) throw std::invalid_argument("CutPartition: cut out of range");
    }

    static CutPartition natural(size_t n, size_t cut) {
        std::vector<uint32_t> ord(n);
        for (size_t i = 0; i < n; ++i) ord[i] = static_cast<uint32_t>(i);
        return CutPartition(std::move(ord), cut);
    }
};

using BoolFn = std::function<int(const Bits&)>;

namespace detail {

struct TableHash {
    size_t operator()(const std::pair<uint64_t, uint64_t>& h) const { return h.first ^ (h.second * 0x9e3779b97f4a7c15ULL); }
};

inline std::pair<uint64_t, uint64_t> hash128(const std::vector<uint64_t>& words) {
    uint64_t a = 0xcbf29ce484222325ULL, b = 0x100000001b3ULL;
    for (uint64_t w : words) {
        a = (a ^ w) * 0x100000001b3ULL;
        a ^= a >> 29;
        b = (b + w) * 0x9e3779b97f4a7c15ULL;
        b ^= b >> 31;
    }
    return {a, b};
}

}  // namespace detail

// Number of distinct restrictions of f obtained by fixing X_A. Truth
// tables are fingerprinted by a 128-bit hash; on a hash hit the stored
// table is compared in full, so the count is exact.
inline uint64_t count_subfunctions(const BoolFn& f, size_t n, const CutPartition& cut, size_t max_n = 26) {
    if (cut.order.size() != n) throw std::invalid_argument("count_subfunctions: cut arity mismatch");
    if (n > max_n)
        throw BudgetError("count_subfunctions: would need 2^" + std::to_string(n) +
                          " evaluations; raise the budget to allow n = " + std::to_string(n));
    const size_t u = cut.u, v = n - u;
    const size_t words = (size_t(1) << v) / 64 + 1;
    std::unordered_map<std::pair<uint64_t, uint64_t>, std::vector<std::vector<uint64_t>>, detail::TableHash> seen;
    uint64_t distinct = 0;
    Bits x(n, 0);
    for (uint64_t sa = 0; sa < (uint64_t(1) << u); ++sa) {
        for (size_t p = 0; p < u; ++p) x[cut.order[p]] = (sa >> (u - 1 - p)) & 1;
        std::vector<uint64_t> table(words, 0);
        for (uint64_t sb = 0; sb < (uint64_t(1) << v); ++sb) {
            for (size_t p = 0; p < v; ++p) x[cut.order[u + p]] = (sb >> (v - 1 - p)) & 1;
            if (f(x)) table[sb / 64] |= uint64_t(1) << (sb % 64);
        }
        auto h = detail::hash128(table);
        auto& cands = seen[h];
        bool found = false;
        for (const auto& t : cands)
            if (t == table) {
                found = true;
                break;
            }
        if (!found) {
            cands.push_back(std::move(table));
            ++distinct;
        }
    }
    return distinct;
}

// max over cuts 1 < u < n of one order (the n = 2 degenerate case falls
// back to the single cut u = 1)
inline uint64_t count_over_order(const BoolFn& f, size_t n, const std::vector<uint32_t>& order, size_t max_n = 26) {
    uint64_t best = 0;
    size_t lo = n > 2 ? 2 : 1, hi = n > 2 ? n - 1 : 1;
    for (size_t u = lo; u <= hi; ++u)
        best = std::max(best, count_subfunctions(f, n, CutPartition(order, u), max_n));
    return best;
}

struct MinCountResult {
    uint64_t value = 0;
    bool exact = false;
    size_t orders_tested = 0;
};

// min over orders: exhaustive for n <= 6, sampled otherwise.
inline MinCountResult count_min(const BoolFn& f, size_t n, size_t samples = 200, Rng* rng = nullptr,
                                size_t max_n = 26) {
    MinCountResult res;
    std::vector<uint32_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = static_cast<uint32_t>(i);
    if (n <= 6) {
        res.exact = true;
        std::sort(order.begin(), order.end());
        uint64_t best = UINT64_MAX;
        do {
            best = std::min(best, count_over_order(f, n, order, max_n));
            ++res.orders_tested;
        } while (std::next_permutation(order.begin(), order.end()));
        res.value = best;
        return res;
    }
    if (!rng) throw std::invalid_argument("count_min: sampled search needs an rng");
    uint64_t best = count_over_order(f, n, order, max_n);
    res.orders_tested = 1;
    for (size_t i = 1; i < samples; ++i) {
        rng->shuffle(order);
        best = std::min(best, count_over_order(f, n, order, max_n));
        ++res.orders_tested;
    }
    res.value = best;
    res.exact = false;
    return res;
}

// ---------------------------------------------------------------------------
// Bound formulas
// ---------------------------------------------------------------------------

// theorem form of the round-count bound, in rounds t and message qubits l:
// (1.5t + 0.5 + (t-1) log2(2^l+2)) * (0.5t - 0.5) * (2^{l+1}+4)^2
inline double log2_bound_theorem(int t, int l) {
    if (t < 1 || t % 2 == 0) throw std::invalid_argument("log2_bound_theorem: t must be odd and >= 1");
    if (l < 0) throw std::invalid_argument("log2_bound_theorem: l must be >= 0");
    double two_l = std::ldexp(1.0, l);
    double f1 = 1.5 * t + 0.5 + (t - 1) * std::log2(two_l + 2.0);
    double f2 = (0.5 * t - 0.5) * std::pow(2.0 * two_l + 4.0, 2.0);
    return f1 * f2;
}

// The proof's final display, parameterized by the message-space size
// w = 2^l: (3k + 1 + 2k log2(w+2)) * k * (2w+4)^2. With w the program
// width this is also the layered-program exponent d(k, w).
inline double log2_bound_proof(int k, double w) {
    if (k < 1) throw std::invalid_argument("log2_bound_proof: k must be >= 1");
    if (w < 1) throw std::invalid_argument("log2_bound_proof: width must be >= 1");
    double f1 = 3.0 * k + 1.0 + 2.0 * k * std::log2(w + 2.0);
    double f2 = static_cast<double>(k) * std::pow(2.0 * w + 4.0, 2.0);
    return f1 * f2;
}

inline double log2_bound_proof_l(int k, int l) {
    if (l < 0) throw std::invalid_argument("log2_bound_proof_l: l must be >= 0");
    return log2_bound_proof(k, std::ldexp(1.0, l));
}

// Least width whose exponent covers the observed log2 subfunction count.
inline uint64_t implied_width(double log2_n, int k) {
    if (k < 1) throw std::invalid_argument("implied_width: k must be >= 1");
    uint64_t w = 1;
    while (log2_bound_proof(k, static_cast<double>(w)) < log2_n) {
        ++w;
        if (w > (uint64_t(1) << 30)) throw BudgetError("implied_width: width search exceeded 2^30");
    }
    return w;
}

// ---------------------------------------------------------------------------
// Width-set condition checks
// ---------------------------------------------------------------------------

struct GkrReport {
    struct ClosureRow {
        uint64_t w = 0, root = 0, root_sq = 0;
        bool root_in = false, root_sq_in = false;
    };
    struct RatioRow {
        uint64_t w = 0;
        double lhs = 0.0;    // k^2 w^2 log2 w
        double ratio = 0.0;  // lhs / n
    };
    struct PairRow {
        uint64_t w = 0, v = 0;
        double value = 0.0;  // C1 sqrt(w) log2 w - C v^2 k log2 v / r^2
        bool positive = false;
    };
    std::vector<ClosureRow> closure;
    std::vector<RatioRow> ratios;
    std::vector<PairRow> pairs;
    bool closure_ok = true;
    bool pairs_all_positive = true;
};

// Reports the three width-set conditions as concrete numbers at the given
// parameters; asymptotic claims are left to the reader of the report.
inline GkrReport gkr_check(const std::vector<uint64_t>& widths, double k, double r, double n, double C = 1.0,
                           double C1 = 1.0) {
    if (widths.empty()) throw std::invalid_argument("gkr_check: empty width set");
    GkrReport rep;
    auto in_set = [&](uint64_t x) { return std::find(widths.begin(), widths.end(), x) != widths.end(); };
    for (uint64_t w : widths) {
        GkrReport::ClosureRow row;
        row.w = w;
        row.root = static_cast<uint64_t>(std::floor(std::sqrt(static_cast<double>(w))));
        row.root_sq = row.root * row.root;
        row.root_in = in_set(row.root);
        row.root_sq_in = in_set(row.root_sq);
        if (!row.root_in || !row.root_sq_in) rep.closure_ok = false;
        rep.closure.push_back(row);

        GkrReport::RatioRow rr;
        rr.w = w;
        rr.lhs = k * k * static_cast<double>(w) * static_cast<double>(w) * std::log2(static_cast<double>(w));
        rr.ratio = n > 0 ? rr.lhs / n : 0.0;
        rep.ratios.push_back(rr);
    }
    for (uint64_t w : widths)
        for (uint64_t v : widths) {
            GkrReport::PairRow pr;
            pr.w = w;
            pr.v = v;
            pr.value = C1 * std::sqrt(static_cast<double>(w)) * std::log2(static_cast<double>(w)) -
                       C * static_cast<double>(v) * static_cast<double>(v) * k * std::log2(static_cast<double>(v)) / (r * r);
            pr.positive = pr.value > 0.0;
            if (!pr.positive) rep.pairs_all_positive = false;
            rep.pairs.push_back(pr);
        }
    return rep;
}

// Exponent of the counting-vs-bound rate: k (C1 sqrt(d) log2 d - C v^2 k log2 v / r^2).
inline double rate_exponent(double d, double v, double k, double r, double C = 1.0, double C1 = 1.0) {
    return k * (C1 * std::sqrt(d) * std::log2(d) - C * v * v * k * std::log2(v) / (r * r));
}

}  // namespace qbp
