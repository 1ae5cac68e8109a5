#include <catch2/catch_amalgamated.hpp>

#include "qbp/program.hpp"
#include "qbp/random.hpp"

using namespace qbp;

namespace {

HybridProgram trivial_program(size_t n, size_t w, uint64_t q0, std::vector<uint64_t> accept) {
    HybridProgram p;
    p.n = n;
    p.qwidth = w;
    p.cwidth = 1;
    p.layers = 1;
    p.order.resize(n);
    for (size_t i = 0; i < n; ++i) p.order[i] = static_cast<uint32_t>(i);
    p.q0 = q0;
    ProgramStep st;
    st.on0 = Transition::identity(1, w);
    st.on1 = Transition::identity(1, w);
    p.steps.assign(n, st);
    p.accept = std::move(accept);
    return p;
}

HybridProgram random_quantum_program(Rng& rng, size_t n, size_t w, size_t k, bool with_measure) {
    HybridProgram p;
    p.n = n;
    p.qwidth = w;
    p.cwidth = 1;
    p.layers = k;
    p.order.resize(n);
    for (size_t i = 0; i < n; ++i) p.order[i] = static_cast<uint32_t>(i);
    p.q0 = rng.below(w);
    for (size_t s = 0; s < n * k; ++s) {
        ProgramStep st;
        for (int bit = 0; bit < 2; ++bit) {
            Transition t;
            t.cmap = {0};
            t.ops = {random_unitary(rng, w)};
            (bit ? st.on1 : st.on0) = std::move(t);
        }
        p.steps.push_back(std::move(st));
    }
    for (uint64_t a = 0; a < w; ++a)
        if (rng.below(2)) p.accept.push_back(a);
    if (with_measure)
        p.measures.push_back({rng.below(n * k), static_cast<int>(rng.below(ceil_log2(w)))});
    validate_program(p);
    return p;
}

}  // namespace

TEST_CASE("run: identity program with accepting start", "[program]") {
    HybridProgram p = trivial_program(3, 4, 2, {2});
    Bits x = {1, 0, 1};
    REQUIRE(accept_probability(p, x) == 1.0);

    p.accept.clear();
    REQUIRE(accept_probability(p, x) == 0.0);

    p.accept = {0, 1, 2, 3};
    REQUIRE(accept_probability(p, x) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("run: normalization audit on random programs", "[program]") {
    Rng rng(41);
    for (int it = 0; it < 30; ++it) {
        HybridProgram p = random_quantum_program(rng, 4, 16, 2, it % 3 == 0);
        Bits x(4);
        for (auto& b : x) b = static_cast<uint8_t>(rng.below(2));
        StateRecord rec;
        double pr = accept_probability(p, x, &rec);
        REQUIRE(rec.norm_drift < 1e-9);
        REQUIRE(pr <= 1.0 + 1e-9);
        REQUIRE(rec.accepted + rec.quantum.norm2() == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("measure events accept and stop on outcome 1", "[program]") {
    // one variable, two qubits; bit 1 flips qubit 0, then qubit 0 is measured
    HybridProgram p = trivial_program(1, 4, 0, {});
    std::vector<uint32_t> perm = {2, 3, 0, 1};  // X on qubit 0
    Transition t1;
    t1.cmap = {0};
    t1.ops = {UnitaryOp::permutation(perm)};
    p.steps[0].on1 = std::move(t1);
    p.measures.push_back({0, 0});
    validate_program(p);

    StateRecord r1 = run(p, Bits{1});
    REQUIRE(r1.accepted == 1.0);
    REQUIRE(r1.quantum.norm2() == 0.0);
    StateRecord r0 = run(p, Bits{0});
    REQUIRE(r0.accepted == 0.0);
    REQUIRE(r0.quantum.norm2() == 1.0);
}

TEST_CASE("decide thresholds and monotonicity", "[program]") {
    REQUIRE(decide_prob(1.0, 0.5) == Decision::One);
    REQUIRE(decide_prob(0.5, 0.1) == Decision::Undecided);
    REQUIRE(decide_prob(0.0, 0.25) == Decision::Zero);

    Rng rng(43);
    for (int it = 0; it < 1000; ++it) {
        double p = rng.uniform();
        double e1 = rng.uniform(0.0, 0.5), e2 = rng.uniform(e1, 0.5);
        Decision d1 = decide_prob(p, e1), d2 = decide_prob(p, e2);
        if (d2 == Decision::One) REQUIRE(d1 == Decision::One);
        if (d2 == Decision::Zero) REQUIRE(d1 == Decision::Zero);
        // raising eps may only move decisions toward undecided
        if (d1 == Decision::Undecided) REQUIRE(d2 == Decision::Undecided);
    }
}

TEST_CASE("permutation programs decide exactly", "[program]") {
    Rng rng(47);
    HybridProgram p = trivial_program(4, 8, 0, {3, 5});
    for (size_t s = 0; s < p.steps.size(); ++s) {
        Transition t1;
        t1.cmap = {0};
        t1.ops = {UnitaryOp::permutation(random_permutation(rng, 8))};
        p.steps[s].on1 = std::move(t1);
    }
    validate_program(p);
    for (uint64_t v = 0; v < 16; ++v) {
        double pr = accept_probability(p, bits_from_index(v, 4));
        REQUIRE((pr == 0.0 || pr == 1.0));
        REQUIRE(decide_prob(pr, 0.49) != Decision::Undecided);
    }
}

TEST_CASE("deterministic OBDD agrees with its hybrid encoding", "[program]") {
    Rng rng(53);
    for (int it = 0; it < 10; ++it) {
        DeterministicObdd o;
        o.n = 6;
        o.width = 3;
        o.order.resize(o.n);
        for (size_t i = 0; i < o.n; ++i) o.order[i] = static_cast<uint32_t>(i);
        rng.shuffle(o.order);
        o.tr.resize(o.n * o.width * 2);
        for (auto& t : o.tr) t = static_cast<uint32_t>(rng.below(o.width));
        o.accepting = {0, 1, 0};
        HybridProgram p = o.to_hybrid_program();
        validate_program(p);
        for (uint64_t v = 0; v < 64; ++v) {
            Bits x = bits_from_index(v, 6);
            REQUIRE(accept_probability(p, x) == (o.eval(x) ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("validate_program rejects malformed programs", "[program]") {
    HybridProgram p = trivial_program(2, 2, 0, {0});
    validate_program(p);

    HybridProgram bad = p;
    bad.order = {0, 0};
    REQUIRE_THROWS_AS(validate_program(bad), std::invalid_argument);

    bad = p;
    bad.accept = {5};
    REQUIRE_THROWS_AS(validate_program(bad), std::invalid_argument);

    bad = p;
    bad.steps[0].on1.ops[0] = UnitaryOp::from_dense(2, {cplx(1, 0), cplx(1, 0), cplx(0, 0), cplx(1, 0)});
    REQUIRE_THROWS_AS(validate_program(bad), std::invalid_argument);

    bad = p;
    bad.qwidth = 3;
    REQUIRE_THROWS_AS(validate_program(bad), std::invalid_argument);

    bad = p;
    bad.measures = {{0, 0}, {0, 0}};
    REQUIRE_THROWS_AS(validate_program(bad), std::invalid_argument);
}
