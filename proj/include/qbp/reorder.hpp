#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qbp/functions.hpp"
#include "qbp/program.hpp"
#include "qbp/random.hpp"

namespace qbp {

// Relocate every variable's transition pair (within each layer) to follow
// a new variable order.
inline HybridProgram reorder_program(const HybridProgram& p, const std::vector<uint32_t>& new_order) {
    if (!p.measures.empty()) throw std::invalid_argument("reorder_program: programs with measure events are not supported");
    if (new_order.size() != p.n) throw std::invalid_argument("reorder_program: order size mismatch");
    std::vector<uint32_t> inv(p.n);
    std::vector<uint8_t> seen(p.n, 0);
    for (size_t pos = 0; pos < p.n; ++pos) inv[p.order[pos]] = static_cast<uint32_t>(pos);
    for (uint32_t v : new_order) {
        if (v >= p.n || seen[v]) throw std::invalid_argument("reorder_program: not a permutation");
        seen[v] = 1;
    }
    HybridProgram q = p;
    q.order = new_order;
    for (size_t L = 0; L < p.layers; ++L)
        for (size_t i = 0; i < p.n; ++i) q.steps[L * p.n + i] = p.steps[L * p.n + inv[new_order[i]]];
    return q;
}

// Function-level commutativity check: accept probabilities must survive
// relocation for every probed order. Exhaustive over inputs for n <= 12,
// exhaustive over adjacent transpositions for n <= 8.
inline bool is_commutative(const HybridProgram& p, int trials, Rng& rng, double tol = kTol) {
    std::vector<std::vector<uint32_t>> orders;
    if (p.n <= 8) {
        for (size_t i = 0; i + 1 < p.n; ++i) {
            std::vector<uint32_t> t = p.order;
            std::swap(t[i], t[i + 1]);
            orders.push_back(std::move(t));
        }
    }
    for (int i = 0; i < trials; ++i) {
        std::vector<uint32_t> t = p.order;
        rng.shuffle(t);
        orders.push_back(std::move(t));
    }

    std::vector<Bits> inputs;
    if (p.n <= 12) {
        for (uint64_t v = 0; v < (uint64_t(1) << p.n); ++v) inputs.push_back(bits_from_index(v, p.n));
    } else {
        for (int i = 0; i < 1000; ++i) {
            Bits x(p.n);
            for (auto& b : x) b = static_cast<uint8_t>(rng.below(2));
            inputs.push_back(std::move(x));
        }
    }

    std::vector<double> base(inputs.size());
    for (size_t i = 0; i < inputs.size(); ++i) base[i] = accept_probability(p, inputs[i]);
    for (const auto& ord : orders) {
        HybridProgram q = reorder_program(p, ord);
        for (size_t i = 0; i < inputs.size(); ++i)
            if (std::abs(accept_probability(q, inputs[i]) - base[i]) > tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// The xor-reorder transform
// ---------------------------------------------------------------------------

// Rebuild a commutative program over q = layout.b variables as a program
// over the layout's address/value blocks, read in natural order. Address
// bits accumulate into a classical register (overwritten at each block's
// first address bit); a set value bit fires the source program's bit-1
// operator for the addressed variable. Requires: quantum-only source, no
// measure events, identity bit-0 transitions, involutive bit-1 operators.
inline HybridProgram xor_reorder_transform(const HybridProgram& p, const XrpjLayout& lay) {
    if (p.cwidth != 1) throw std::invalid_argument("xor_reorder_transform: source must be quantum-only");
    if (!p.measures.empty()) throw std::invalid_argument("xor_reorder_transform: source must not measure mid-run");
    if (p.n != static_cast<size_t>(lay.b)) throw std::invalid_argument("xor_reorder_transform: layout block count != source variable count");
    std::vector<uint32_t> inv(p.n);
    for (size_t pos = 0; pos < p.n; ++pos) inv[p.order[pos]] = static_cast<uint32_t>(pos);
    for (const ProgramStep& st : p.steps) {
        if (!is_identity(st.on0.ops[0])) throw std::invalid_argument("xor_reorder_transform: bit-0 transitions must be identity");
        if (!is_involution(st.on1.ops[0])) throw std::invalid_argument("xor_reorder_transform: bit-1 operators must be involutions");
    }

    const int ab = lay.address_bits;
    const size_t cw = size_t(1) << ab;

    HybridProgram out;
    out.n = lay.n;
    out.qwidth = p.qwidth;
    out.cwidth = cw;
    out.layers = p.layers;
    out.order.resize(out.n);
    for (size_t i = 0; i < out.n; ++i) out.order[i] = static_cast<uint32_t>(i);
    out.q0 = p.q0;
    out.steps.reserve(out.step_count());

    for (size_t L = 0; L < p.layers; ++L) {
        for (int blk = 0; blk < lay.b; ++blk) {
            for (int u = 0; u < ab; ++u) {
                ProgramStep st;
                for (int bit = 0; bit < 2; ++bit) {
                    Transition t;
                    t.cmap.resize(cw);
                    t.ops.assign(cw, UnitaryOp::identity(p.qwidth));
                    for (size_t s = 0; s < cw; ++s) {
                        if (u == 0)
                            t.cmap[s] = bit ? (uint32_t(1) << (ab - 1)) : 0;  // overwrite
                        else
                            t.cmap[s] = static_cast<uint32_t>(s ^ (uint64_t(bit) << (ab - 1 - u)));
                    }
                    (bit ? st.on1 : st.on0) = std::move(t);
                }
                out.steps.push_back(std::move(st));
            }
            ProgramStep vs;
            vs.on0 = Transition::identity(cw, p.qwidth);
            Transition t1 = Transition::identity(cw, p.qwidth);
            for (size_t a = 0; a < cw; ++a)
                if (a >= 1 && a <= static_cast<size_t>(lay.b))
                    t1.ops[a] = p.steps[L * p.n + inv[a - 1]].on1.ops[0];
            vs.on1 = std::move(t1);
            out.steps.push_back(std::move(vs));
        }
    }

    out.accept.reserve(p.accept.size() * cw);
    for (size_t c = 0; c < cw; ++c)
        for (uint64_t a : p.accept) out.accept.push_back(c * p.qwidth + a);
    out.meta.builder = p.meta.builder.empty() ? "xor_reorder" : "xor_reorder(" + p.meta.builder + ")";
    out.meta.params = p.meta.params;
    return out;
}

}  // namespace qbp
