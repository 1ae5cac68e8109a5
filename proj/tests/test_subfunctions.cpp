#include <catch2/catch_amalgamated.hpp>

#include "qbp/constructions.hpp"
#include "qbp/subfunctions.hpp"

using namespace qbp;

namespace {

BoolFn and_fn(size_t n) {
    return [n](const Bits& x) {
        int v = 1;
        for (size_t i = 0; i < n; ++i) v &= x[i];
        return v;
    };
}

BoolFn xor_fn(size_t n) {
    return [n](const Bits& x) {
        int v = 0;
        for (size_t i = 0; i < n; ++i) v ^= x[i];
        return v;
    };
}

}  // namespace

TEST_CASE("count_subfunctions small cases", "[subfunctions]") {
    REQUIRE(count_subfunctions(and_fn(2), 2, CutPartition::natural(2, 1)) == 2);
    BoolFn zero = [](const Bits&) { return 0; };
    for (size_t u = 1; u < 4; ++u) REQUIRE(count_subfunctions(zero, 4, CutPartition::natural(4, u)) == 1);
    REQUIRE(count_subfunctions(xor_fn(4), 4, CutPartition::natural(4, 2)) == 2);
}

TEST_CASE("count over orders and exact minimum", "[subfunctions]") {
    BoolFn one = [](const Bits&) { return 1; };
    REQUIRE(count_min(one, 4).value == 1);

    MinCountResult and3 = count_min(and_fn(3), 3);
    REQUIRE(and3.exact);
    REQUIRE(and3.orders_tested == 6);
    REQUIRE(and3.value == 2);

    // parity is order-invariant: every order gives 2
    const size_t n = 5;
    std::vector<uint32_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = static_cast<uint32_t>(i);
    std::sort(order.begin(), order.end());
    do {
        REQUIRE(count_over_order(xor_fn(n), n, order) == 2);
    } while (std::next_permutation(order.begin(), order.end()));

    // sampled search above the exhaustive range reports itself as such
    Rng rng(127);
    MinCountResult sampled = count_min(xor_fn(8), 8, 20, &rng);
    REQUIRE_FALSE(sampled.exact);
    REQUIRE(sampled.orders_tested == 20);
    REQUIRE(sampled.value == 2);
    REQUIRE_THROWS_AS(count_min(xor_fn(8), 8, 20, nullptr), std::invalid_argument);
}

TEST_CASE("count is invariant under permutations within each side", "[subfunctions]") {
    Rng rng(103);
    const size_t n = 8, u = 3;
    // random function from a seeded truth table
    std::vector<uint8_t> table(1 << n);
    for (auto& t : table) t = static_cast<uint8_t>(rng.below(2));
    BoolFn f = [table, n](const Bits& x) { return static_cast<int>(table[bits_to_index(x)]); };

    std::vector<uint32_t> base(n);
    for (size_t i = 0; i < n; ++i) base[i] = static_cast<uint32_t>(i);
    uint64_t reference = count_subfunctions(f, n, CutPartition(base, u));
    for (int it = 0; it < 10; ++it) {
        std::vector<uint32_t> ord = base;
        // shuffle the prefix and the suffix separately
        for (size_t i = u; i > 1; --i) std::swap(ord[i - 1], ord[rng.below(i)]);
        for (size_t i = n - u; i > 1; --i) std::swap(ord[u + i - 1], ord[u + rng.below(i)]);
        REQUIRE(count_subfunctions(f, n, CutPartition(ord, u)) == reference);
    }
}

TEST_CASE("cardinality ceilings", "[subfunctions]") {
    Rng rng(107);
    const size_t n = 7;
    std::vector<uint8_t> table(1 << n);
    for (auto& t : table) t = static_cast<uint8_t>(rng.below(2));
    BoolFn f = [table](const Bits& x) { return static_cast<int>(table[bits_to_index(x)]); };
    for (size_t u = 1; u < n; ++u) {
        uint64_t c = count_subfunctions(f, n, CutPartition::natural(n, u));
        double ceiling = std::min(std::pow(2.0, std::pow(2.0, double(n - u))), std::pow(2.0, double(u)));
        REQUIRE(static_cast<double>(c) <= ceiling);
    }
}

TEST_CASE("budget guard refuses oversized enumerations", "[subfunctions]") {
    BoolFn zero = [](const Bits&) { return 0; };
    REQUIRE_THROWS_AS(count_subfunctions(zero, 30, CutPartition::natural(30, 15)), BudgetError);
    REQUIRE_THROWS_MATCHES(count_subfunctions(zero, 30, CutPartition::natural(30, 15)), BudgetError,
                           Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("2^30")));
}

TEST_CASE("bound formulas", "[subfunctions][bounds]") {
    REQUIRE(log2_bound_theorem(3, 1) == 576.0);
    REQUIRE(log2_bound_theorem(1, 3) == 0.0);  // the 0.5t - 0.5 factor vanishes
    REQUIRE(log2_bound_proof_l(2, 1) == 1920.0);
    REQUIRE(log2_bound_proof(1, 2) == 512.0);
    REQUIRE_THROWS_AS(log2_bound_theorem(2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(log2_bound_proof(0, 1), std::invalid_argument);
}

TEST_CASE("bound monotonicity", "[subfunctions][bounds]") {
    for (int t : {3, 5, 7, 9})
        for (int l : {0, 1, 2, 3}) {
            REQUIRE(log2_bound_theorem(t + 2, l) > log2_bound_theorem(t, l));
            REQUIRE(log2_bound_theorem(t, l + 1) > log2_bound_theorem(t, l));
        }
    for (int k : {1, 2, 3, 4})
        for (int w : {1, 2, 4, 8}) {
            REQUIRE(log2_bound_proof(k + 1, w) > log2_bound_proof(k, w));
            REQUIRE(log2_bound_proof(k, w + 1) > log2_bound_proof(k, w));
        }
}

TEST_CASE("implied width", "[subfunctions][bounds]") {
    REQUIRE(implied_width(512.0, 1) == 2);  // d(1,1) ~ 258 < 512 = d(1,2)
    REQUIRE(implied_width(0.0, 1) == 1);
    REQUIRE(implied_width(-5.0, 3) == 1);

    // end-to-end: count the built instance's subfunctions at the natural cut
    HybridProgram p = build_mxpj_program({2, 2});
    MxLayout lay = MxLayout::make(2, 2);
    BoolFn f = [&](const Bits& x) { return mxpj_bool(x, lay); };
    uint64_t n_pi = count_subfunctions(f, 8, CutPartition::natural(8, 4));
    uint64_t w = implied_width(std::log2(static_cast<double>(n_pi)), 2);
    REQUIRE(w <= p.qwidth);  // consistency with the d^2-width program, not tightness
}

TEST_CASE("width-set condition report", "[subfunctions][gkr]") {
    GkrReport rep = gkr_check({4, 2, 1}, 4, 4, 1024);
    REQUIRE(rep.closure_ok);  // floor(sqrt(4)) = 2 and 4 are both present

    // the displayed inequality fails at w = v = 4, k = r = 4, C = C1 = 1
    bool found = false;
    for (const auto& pr : rep.pairs)
        if (pr.w == 4 && pr.v == 4) {
            REQUIRE(pr.value == Catch::Approx(-4.0));
            REQUIRE_FALSE(pr.positive);
            found = true;
        }
    REQUIRE(found);
    REQUIRE_FALSE(rep.pairs_all_positive);

    GkrReport open = gkr_check({4, 3}, 1, 1, 64);
    REQUIRE_FALSE(open.closure_ok);  // floor(sqrt(3)) = 1 missing

    REQUIRE_THROWS_AS(gkr_check({}, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("rate exponent", "[subfunctions][gkr]") {
    // k (C1 sqrt(d) log2 d - C v^2 k log2 v / r^2)
    double e = rate_exponent(16.0, 2.0, 2.0, 4.0);
    REQUIRE(e == Catch::Approx(2.0 * (4.0 * 4.0 - 4.0 * 2.0 * 1.0 / 16.0)));
    REQUIRE(rate_exponent(4.0, 4.0, 4.0, 4.0) == Catch::Approx(4.0 * (1.0 * 2.0 * 2.0 - 16.0 * 4.0 * 2.0 / 16.0)));
}
