#pragma once

#include <stdexcept>
#include <vector>

#include "qbp/functions.hpp"
#include "qbp/program.hpp"
#include "qbp/reorder.hpp"

namespace qbp {

constexpr size_t kMaxConstructionWidth = size_t(1) << 20;

namespace detail {

inline void require_pow2_d(int d) {
    if (d < 2 || !is_pow2(static_cast<uint64_t>(d)))
        throw std::invalid_argument("construction: d must be a power of two (registers hold exactly log2(d) qubits)");
}

inline ProgramStep quantum_identity_step(size_t qwidth) {
    ProgramStep st;
    st.on0 = Transition::identity(1, qwidth);
    st.on1 = Transition::identity(1, qwidth);
    return st;
}

inline ProgramStep quantum_perm_step(size_t qwidth, std::vector<uint32_t> perm_on1) {
    ProgramStep st;
    st.on0 = Transition::identity(1, qwidth);
    Transition t1;
    t1.cmap = {0};
    t1.ops = {UnitaryOp::permutation(std::move(perm_on1))};
    st.on1 = std::move(t1);
    return st;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Width-d^2 layered program for the xor pointer-jumping recurrence.
//
// Two registers |phi>|psi> of t qubits each, joint index phi*d + psi.
// Layer 1 copies block a_{1,1} into phi, then xors b_{1,phi} into psi.
// Layer r >= 2 xors a_{r,psi} into phi (producing the two-steps-back xor
// feedback in the stale register), then b_{r,phi} into psi. Accepting
// states are those whose psi part has odd bit parity.
// ---------------------------------------------------------------------------

struct MxpjBuildParams {
    int d = 2;
    int k = 1;
};

inline HybridProgram build_mxpj_program(const MxpjBuildParams& prm) {
    detail::require_pow2_d(prm.d);
    if (prm.k < 1) throw std::invalid_argument("build_mxpj_program: k must be >= 1");
    MxLayout lay = MxLayout::make(prm.d, prm.k);
    const int d = prm.d, k = prm.k, t = lay.t;
    const size_t width = static_cast<size_t>(d) * d;
    if (width > kMaxConstructionWidth) throw BudgetError("build_mxpj_program: width exceeds 2^20");

    HybridProgram p;
    p.n = lay.n;
    p.qwidth = width;
    p.cwidth = 1;
    p.layers = k;
    p.order.resize(p.n);
    for (size_t i = 0; i < p.n; ++i) p.order[i] = static_cast<uint32_t>(i);
    p.q0 = 0;
    p.steps.reserve(p.step_count());

    auto flip_phi = [&](int ctrl_psi, int j, bool controlled) {
        std::vector<uint32_t> perm(width);
        for (size_t s = 0; s < width; ++s) {
            int phi = static_cast<int>(s) / d, psi = static_cast<int>(s) % d;
            if (!controlled || psi == ctrl_psi) phi ^= 1 << (t - 1 - j);
            perm[s] = static_cast<uint32_t>(phi * d + psi);
        }
        return perm;
    };
    auto flip_psi = [&](int ctrl_phi, int j) {
        std::vector<uint32_t> perm(width);
        for (size_t s = 0; s < width; ++s) {
            int phi = static_cast<int>(s) / d, psi = static_cast<int>(s) % d;
            if (phi == ctrl_phi) psi ^= 1 << (t - 1 - j);
            perm[s] = static_cast<uint32_t>(phi * d + psi);
        }
        return perm;
    };

    for (int layer = 1; layer <= k; ++layer) {
        for (size_t pos = 0; pos < p.n; ++pos) {
            const int blk_index = static_cast<int>(pos) / t;
            const int j = static_cast<int>(pos) % t;
            const bool in_a = blk_index < k * d;
            const int blk_layer = in_a ? blk_index / d : (blk_index - k * d) / d;
            const int blk = blk_index % d;
            if (blk_layer != layer - 1) {
                p.steps.push_back(detail::quantum_identity_step(width));
            } else if (in_a) {
                if (layer == 1) {
                    // first layer stores only a_{1,1}; the rest of the A part is skipped
                    if (blk == 0)
                        p.steps.push_back(detail::quantum_perm_step(width, flip_phi(0, j, false)));
                    else
                        p.steps.push_back(detail::quantum_identity_step(width));
                } else {
                    p.steps.push_back(detail::quantum_perm_step(width, flip_phi(blk, j, true)));
                }
            } else {
                p.steps.push_back(detail::quantum_perm_step(width, flip_psi(blk, j)));
            }
        }
    }

    for (size_t s = 0; s < width; ++s)
        if (parity64(s % d)) p.accept.push_back(s);
    p.meta.builder = "mxpj";
    p.meta.params = {{"d", prm.d}, {"k", prm.k}};
    validate_program(p);
    return p;
}

// ---------------------------------------------------------------------------
// Commutative pointer-jumping program.
//
// 2k+1 qubit groups; groups 0..2k-1 hold log2(d)+1 qubits (value bits
// above a side bit, so the group integer is 2*local + side and odd groups
// start as |0...01>), group 2k is a single output qubit. Layer r stores
// block x into group r when group r-1 points at x; the last layer xors
// the pointed block's bits into the output qubit. Accepting states have
// the output qubit set. All transitions commute within a layer, so the
// program is commutative.
// ---------------------------------------------------------------------------

struct PjBuildParams {
    int d = 2;
    int k = 1;
};

inline size_t pj_program_width(const PjBuildParams& prm) {
    int t = ceil_log2(static_cast<uint64_t>(prm.d));
    if (t == 0) t = 1;
    const int m = t + 1;
    const int bits = 2 * prm.k * m + 1;
    if (bits > 62) throw BudgetError("build_pj_program: width exceeds 2^62");
    return size_t(1) << bits;
}

inline HybridProgram build_pj_program(const PjBuildParams& prm) {
    detail::require_pow2_d(prm.d);
    if (prm.k < 1) throw std::invalid_argument("build_pj_program: k must be >= 1");
    PjLayout lay = PjLayout::make(prm.d);
    const int d = prm.d, k = prm.k, t = lay.t;
    const int m = t + 1;
    const size_t width = pj_program_width(prm);
    if (width > kMaxConstructionWidth) throw BudgetError("build_pj_program: width exceeds 2^20");

    // group q occupies bits [shift, shift+width_q); group 2k is the lowest bit
    auto gshift = [&](int q) { return q < 2 * k ? (2 * k - 1 - q) * m + 1 : 0; };
    auto gget = [&](size_t s, int q) {
        return static_cast<int>((s >> gshift(q)) & ((q < 2 * k ? (size_t(1) << m) : 2) - 1));
    };
    auto gflip = [&](size_t s, int q, int bitmask) { return s ^ (static_cast<size_t>(bitmask) << gshift(q)); };
    auto gstar = [&](int blk) { return 2 * (blk % d) + (blk >= d ? 1 : 0); };

    HybridProgram p;
    p.n = lay.n;
    p.qwidth = width;
    p.cwidth = 1;
    p.layers = static_cast<size_t>(2) * k;
    p.order.resize(p.n);
    for (size_t i = 0; i < p.n; ++i) p.order[i] = static_cast<uint32_t>(i);
    p.steps.reserve(p.step_count());

    uint64_t q0 = 0;
    for (int q = 0; q < 2 * k; ++q)
        if (q % 2 == 1) q0 |= uint64_t(1) << gshift(q);  // odd groups end in |1>
    p.q0 = q0;

    for (int layer = 1; layer <= 2 * k; ++layer) {
        for (size_t pos = 0; pos < p.n; ++pos) {
            const int blk = static_cast<int>(pos) / t;
            const int j = static_cast<int>(pos) % t;
            const bool last = layer == 2 * k;
            const bool active = last ? blk >= d : ((layer % 2 == 1) == (blk < d));
            if (!active) {
                p.steps.push_back(detail::quantum_identity_step(width));
                continue;
            }
            std::vector<uint32_t> perm(width);
            const int ctrl = gstar(blk);
            for (size_t s = 0; s < width; ++s) {
                size_t out = s;
                if (gget(s, layer - 1) == ctrl)
                    out = last ? gflip(s, 2 * k, 1) : gflip(s, layer, 1 << (t - j));  // value bit j
                perm[s] = static_cast<uint32_t>(out);
            }
            p.steps.push_back(detail::quantum_perm_step(width, std::move(perm)));
        }
    }

    for (size_t s = 1; s < width; s += 2) p.accept.push_back(s);
    p.meta.builder = "pj";
    p.meta.params = {{"d", prm.d}, {"k", prm.k}};
    validate_program(p);
    return p;
}

// Xor-reordered pointer jumping: the commutative program pushed through
// the reorder transform over the matching address/value layout.
inline HybridProgram build_xrpj_program(int d, int k) {
    HybridProgram pj = build_pj_program({d, k});
    XrpjLayout lay = XrpjLayout::make(d);
    HybridProgram out = xor_reorder_transform(pj, lay);
    if (out.total_width() > kMaxConstructionWidth) throw BudgetError("build_xrpj_program: width exceeds 2^20");
    out.meta.builder = "xrpj";
    out.meta.params = {{"d", d}, {"k", k}};
    validate_program(out);
    return out;
}

}  // namespace qbp
