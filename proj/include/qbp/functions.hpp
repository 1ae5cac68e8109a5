#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qbp/bits.hpp"

namespace qbp {

// ---------------------------------------------------------------------------
// Plain pointer jumping over two d-vertex sides
// ---------------------------------------------------------------------------

// fa maps V_A locally into V_B, fb maps V_B locally into V_A.
struct PointerPair {
    int d = 0;
    std::vector<int> fa, fb;

    PointerPair() = default;
    PointerPair(int d_, std::vector<int> fa_, std::vector<int> fb_)
        : d(d_), fa(std::move(fa_)), fb(std::move(fb_)) {
        if (static_cast<int>(fa.size()) != d || static_cast<int>(fb.size()) != d)
            throw std::invalid_argument("PointerPair: table size != d");
        for (int v : fa)
            if (v < 0 || v >= d) throw std::invalid_argument("PointerPair: fa entry out of range");
        for (int v : fb)
            if (v < 0 || v >= d) throw std::invalid_argument("PointerPair: fb entry out of range");
    }
};

// Local index of f^(steps)(v0); sides alternate starting on A.
inline int pj_eval(const PointerPair& p, int steps, int v0 = 0) {
    if (v0 < 0 || v0 >= p.d) throw std::invalid_argument("pj_eval: v0 out of range");
    int v = v0;
    for (int j = 0; j < steps; ++j) v = (j % 2 == 0) ? p.fa[v] : p.fb[v];
    return v;
}

// ---------------------------------------------------------------------------
// Block layouts and indexing modes
// ---------------------------------------------------------------------------

// XOR feedback can push an intermediate value outside [0, d). strict
// raises on such a lookup, mod reduces the index mod d. Values themselves
// always live in the t-bit space.
enum class IndexMode { strict, mod };

inline int checked_index(int v, int d, IndexMode mode, const char* where) {
    if (v >= 0 && v < d) return v;
    if (mode == IndexMode::strict)
        throw std::domain_error(std::string(where) + ": lookup index " + std::to_string(v) +
                                " outside [0," + std::to_string(d) + ") in strict mode");
    return ((v % d) + d) % d;
}

// Layout for the layered function family: A blocks a_{1,1}..a_{k,d}
// followed by B blocks b_{1,1}..b_{k,d}, each t = ceil(log2 d) bits.
struct MxLayout {
    int d = 0, k = 0, t = 0;
    size_t n = 0;
    IndexMode mode = IndexMode::strict;

    static MxLayout make(int d, int k, IndexMode mode = IndexMode::strict) {
        if (d < 2 || k < 1) throw std::invalid_argument("MxLayout: need d >= 2, k >= 1");
        MxLayout l;
        l.d = d;
        l.k = k;
        l.t = ceil_log2(static_cast<uint64_t>(d));
        if (l.t == 0) l.t = 1;
        l.n = static_cast<size_t>(2) * k * d * l.t;
        l.mode = mode;
        return l;
    }

    size_t a_off(int layer, int blk) const { return (static_cast<size_t>(layer) * d + blk) * t; }
    size_t b_off(int layer, int blk) const {
        return (static_cast<size_t>(k) * d + static_cast<size_t>(layer) * d + blk) * t;
    }
    size_t a_len() const { return static_cast<size_t>(k) * d * t; }
};

// Decoded tables; entries are t-bit values (the bit encoding can carry
// values >= d, which only matter when looked up).
struct LayeredTables {
    int d = 0, k = 0;
    std::vector<std::vector<int>> a, b;  // k layers of d entries each
};

// Strictly-typed variant: every entry is a valid vertex.
struct LayeredPointerInput {
    int d = 0, k = 0;
    std::vector<std::vector<int>> layers_a, layers_b;

    LayeredPointerInput() = default;
    LayeredPointerInput(int d_, int k_, std::vector<std::vector<int>> la, std::vector<std::vector<int>> lb)
        : d(d_), k(k_), layers_a(std::move(la)), layers_b(std::move(lb)) {
        auto check = [&](const std::vector<std::vector<int>>& ls, const char* side) {
            if (static_cast<int>(ls.size()) != k) throw std::invalid_argument(std::string("LayeredPointerInput: ") + side + " layer count != k");
            for (const auto& t : ls) {
                if (static_cast<int>(t.size()) != d) throw std::invalid_argument("LayeredPointerInput: table size != d");
                for (int v : t)
                    if (v < 0 || v >= d) throw std::invalid_argument("LayeredPointerInput: entry out of range");
            }
        };
        check(layers_a, "A");
        check(layers_b, "B");
    }

    LayeredTables tables() const { return LayeredTables{d, k, layers_a, layers_b}; }
};

inline LayeredTables mx_decode(const Bits& bits, const MxLayout& lay) {
    if (bits.size() != lay.n) throw std::invalid_argument("mx_decode: input length mismatch");
    LayeredTables t;
    t.d = lay.d;
    t.k = lay.k;
    t.a.assign(lay.k, std::vector<int>(lay.d));
    t.b.assign(lay.k, std::vector<int>(lay.d));
    for (int L = 0; L < lay.k; ++L)
        for (int u = 0; u < lay.d; ++u) {
            t.a[L][u] = static_cast<int>(block_get(bits, lay.a_off(L, u), lay.t));
            t.b[L][u] = static_cast<int>(block_get(bits, lay.b_off(L, u), lay.t));
        }
    return t;
}

inline Bits mx_encode(const LayeredTables& t, const MxLayout& lay) {
    Bits bits(lay.n, 0);
    for (int L = 0; L < lay.k; ++L)
        for (int u = 0; u < lay.d; ++u) {
            if (t.a[L][u] < 0 || t.a[L][u] >= (1 << lay.t) || t.b[L][u] < 0 || t.b[L][u] >= (1 << lay.t))
                throw std::invalid_argument("mx_encode: entry does not fit in t bits");
            block_set(bits, lay.a_off(L, u), lay.t, t.a[L][u]);
            block_set(bits, lay.b_off(L, u), lay.t, t.b[L][u]);
        }
    return bits;
}

inline Bits mx_encode(const LayeredPointerInput& in, const MxLayout& lay) { return mx_encode(in.tables(), lay); }

// Concatenate an A-part and a B-part assignment into a full input.
inline Bits mx_combine(const Bits& a_part, const Bits& b_part, const MxLayout& lay) {
    if (a_part.size() != lay.a_len() || b_part.size() != lay.n - lay.a_len())
        throw std::invalid_argument("mx_combine: part length mismatch");
    Bits all(a_part);
    all.insert(all.end(), b_part.begin(), b_part.end());
    return all;
}

// ---------------------------------------------------------------------------
// MatrixPJ and MXPJ
// ---------------------------------------------------------------------------

// Step j+1 applies f_{A,ceil((j+1)/2)} when j+1 is odd, f_{B,...} when even.
inline std::vector<int> matrixpj_trace(const LayeredTables& t, int steps, IndexMode mode = IndexMode::strict) {
    if (steps < 0 || steps > 2 * t.k) throw std::invalid_argument("matrixpj_trace: steps out of range");
    std::vector<int> tr{0};
    int f = 0;
    for (int s = 1; s <= steps; ++s) {
        int layer = (s + 1) / 2 - 1;
        const auto& tab = (s % 2 == 1) ? t.a[layer] : t.b[layer];
        f = tab[checked_index(f, t.d, mode, "matrixpj")];
        tr.push_back(f);
    }
    return tr;
}

inline int matrixpj_eval(const LayeredTables& t, int steps, IndexMode mode = IndexMode::strict) {
    return matrixpj_trace(t, steps, mode).back();
}

// MXPJ recurrence f^(j+1) = f_{j+1}(f^(j)) xor f^(j-1), with f^(-1) = 0.
inline std::vector<int> mxpj_trace(const LayeredTables& t, IndexMode mode = IndexMode::strict) {
    std::vector<int> tr{0};
    int fprev = 0, f = 0;
    for (int s = 1; s <= 2 * t.k; ++s) {
        int layer = (s + 1) / 2 - 1;
        const auto& tab = (s % 2 == 1) ? t.a[layer] : t.b[layer];
        int val = tab[checked_index(f, t.d, mode, "mxpj")];
        int fnext = val ^ fprev;
        fprev = f;
        f = fnext;
        tr.push_back(f);
    }
    return tr;
}

inline int mxpj_eval(const LayeredTables& t, IndexMode mode = IndexMode::strict) { return mxpj_trace(t, mode).back(); }

inline int mxpj_bool(const LayeredTables& t, IndexMode mode = IndexMode::strict) {
    return parity64(static_cast<uint64_t>(mxpj_eval(t, mode)));
}

inline std::vector<int> mxpj_trace(const Bits& bits, const MxLayout& lay) { return mxpj_trace(mx_decode(bits, lay), lay.mode); }
inline int mxpj_eval(const Bits& bits, const MxLayout& lay) { return mxpj_eval(mx_decode(bits, lay), lay.mode); }
inline int mxpj_bool(const Bits& bits, const MxLayout& lay) { return mxpj_bool(mx_decode(bits, lay), lay.mode); }
inline int matrixpj_eval(const Bits& bits, const MxLayout& lay, int steps) {
    return matrixpj_eval(mx_decode(bits, lay), steps, lay.mode);
}

inline int mxpj_eval(const LayeredPointerInput& in, IndexMode mode = IndexMode::strict) { return mxpj_eval(in.tables(), mode); }
inline int mxpj_bool(const LayeredPointerInput& in, IndexMode mode = IndexMode::strict) { return mxpj_bool(in.tables(), mode); }

// ---------------------------------------------------------------------------
// Boolean PJ
// ---------------------------------------------------------------------------

// 2d blocks of t bits: blocks 0..d-1 encode f_A, blocks d..2d-1 encode f_B.
struct PjLayout {
    int d = 0, t = 0;
    size_t n = 0;

    static PjLayout make(int d) {
        if (d < 2) throw std::invalid_argument("PjLayout: need d >= 2");
        PjLayout l;
        l.d = d;
        l.t = ceil_log2(static_cast<uint64_t>(d));
        if (l.t == 0) l.t = 1;
        l.n = static_cast<size_t>(2) * d * l.t;
        return l;
    }
};

// Global-vertex walk; returns the final global vertex in {0,...,2d-1}.
inline int pj_walk(const Bits& bits, const PjLayout& lay, int steps, IndexMode mode = IndexMode::strict) {
    if (bits.size() != lay.n) throw std::invalid_argument("pj_walk: input length mismatch");
    int x = 0;
    for (int s = 0; s < steps; ++s) {
        if (x < lay.d) {
            int val = checked_index(static_cast<int>(block_get(bits, static_cast<size_t>(x) * lay.t, lay.t)),
                                    lay.d, mode, "pj fA");
            x = val + lay.d;
        } else {
            int val = checked_index(static_cast<int>(block_get(bits, static_cast<size_t>(x) * lay.t, lay.t)),
                                    lay.d, mode, "pj fB");
            x = val;
        }
    }
    return x;
}

// Parity of the local t-bit index of the vertex reached after `steps`.
inline int pj_bool(const Bits& bits, const PjLayout& lay, int steps, IndexMode mode = IndexMode::strict) {
    int x = pj_walk(bits, lay, steps, mode);
    int local = x < lay.d ? x : x - lay.d;
    return parity64(static_cast<uint64_t>(local));
}

// ---------------------------------------------------------------------------
// XRPJ: xor-reordered pointer jumping
// ---------------------------------------------------------------------------

// b blocks of (addressBits + 1) bits each; the first addressBits bits are
// the block's address, the final bit its value. Valid addresses are
// 1..b = 1..2dw; anything else contributes nowhere.
struct XrpjLayout {
    int d = 0, w = 0, b = 0, address_bits = 0;
    size_t n = 0;

    static XrpjLayout make(int d) {
        if (d < 2) throw std::invalid_argument("XrpjLayout: need d >= 2");
        XrpjLayout l;
        l.d = d;
        l.w = ceil_log2(static_cast<uint64_t>(d));
        if (l.w == 0) l.w = 1;
        l.b = 2 * d * l.w;
        l.address_bits = ceil_log2(static_cast<uint64_t>(l.b));
        l.n = static_cast<size_t>(l.b) * (l.address_bits + 1);
        return l;
    }

    size_t block_off(int i) const { return static_cast<size_t>(i) * (address_bits + 1); }
};

inline int xr_adr(const Bits& bits, const XrpjLayout& lay, int i) {
    return static_cast<int>(block_get(bits, lay.block_off(i), lay.address_bits));
}

inline int xr_val(const Bits& bits, const XrpjLayout& lay, int i) {
    return bits[lay.block_off(i) + lay.address_bits];
}

// Per-vertex table value assembled from the blocks addressing the
// vertex's w-address window; window addresses read most-significant-first.
inline int bv_value(const Bits& bits, const XrpjLayout& lay, int vertex) {
    int acc = 0;
    for (int u = 1; u <= lay.w; ++u) {
        int x = 0;
        for (int i = 0; i < lay.b; ++i)
            if (xr_adr(bits, lay, i) == vertex * lay.w + u) x ^= xr_val(bits, lay, i);
        acc |= x << (lay.w - u);
    }
    return acc;
}

inline int xrpj_eval(const Bits& bits, const XrpjLayout& lay, int steps) {
    if (bits.size() != lay.n) throw std::invalid_argument("xrpj_eval: input length mismatch");
    int x = 0;
    for (int s = 0; s < steps; ++s) {
        int bv = bv_value(bits, lay, x);
        if (bv >= lay.d) throw std::domain_error("xrpj_eval: BV value escapes [0,d) (d not a power of two)");
        x = (x < lay.d) ? bv + lay.d : bv;
    }
    int out = 0;
    for (int i = 0; i < lay.b; ++i) {
        int a = xr_adr(bits, lay, i);
        if (x * lay.w < a && a <= (x + 1) * lay.w) out ^= xr_val(bits, lay, i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The structured A-part family and its distinguishing B-parts
// ---------------------------------------------------------------------------

// Restartable stream over the structured set: blocks 0..2 and layers
// 0, k-2, k-1 are all-zero; free cells (layers 1..k-3, blocks
// 3..2+floor(d/3-1)) range over all d values; cells at offsets
// floor(d/3-1) and 2*floor(d/3-1) carry the xor-1 / xor-2 companions.
struct SigmaStream {
    int d = 0, k = 0, c = 0;
    MxLayout lay;
    std::vector<std::pair<int, int>> free_cells;  // (layer, block)
    uint64_t count = 0;

    static SigmaStream make(int d, int k) {
        if (d < 9 || k < 4)
            throw std::domain_error("SigmaStream: unsupported parameters, need d >= 9 and k >= 4");
        SigmaStream s;
        s.d = d;
        s.k = k;
        s.c = d / 3 - 1;
        s.lay = MxLayout::make(d, k);
        for (int L = 1; L <= k - 3; ++L)
            for (int u = 3; u <= 2 + s.c; ++u) s.free_cells.emplace_back(L, u);
        long double total = 1.0L;
        uint64_t cnt = 1;
        for (size_t i = 0; i < s.free_cells.size(); ++i) {
            total *= d;
            if (total > 9.2e18L)
                throw BudgetError("SigmaStream: stream size exceeds 2^63, refuse to enumerate");
            cnt *= static_cast<uint64_t>(d);
        }
        s.count = cnt;
        return s;
    }

    uint64_t size() const { return count; }

    // A-part assignment for stream position idx (mixed-radix decode).
    Bits at(uint64_t idx) const {
        if (idx >= count) throw std::invalid_argument("SigmaStream::at: index out of range");
        Bits bits(lay.a_len(), 0);
        for (const auto& [L, u] : free_cells) {
            int v = static_cast<int>(idx % d);
            idx /= d;
            block_set(bits, lay.a_off(L, u), lay.t, static_cast<uint64_t>(v));
            block_set(bits, lay.a_off(L, u + c), lay.t, static_cast<uint64_t>(v ^ 1));
            block_set(bits, lay.a_off(L, u + 2 * c), lay.t, static_cast<uint64_t>(v ^ 2));
        }
        return bits;
    }
};

namespace detail {

inline Bits build_gamma(const MxLayout& lay, int c, int r, int z, int s, int sp) {
    const int k = lay.k, t = lay.t;
    Bits g(lay.n - lay.a_len(), 0);
    auto set = [&](int layer, int blk, int val) {
        size_t off = (static_cast<size_t>(layer) * lay.d + blk) * t;  // offset inside the B part
        block_set(g, off, t, static_cast<uint64_t>(val & ((1 << t) - 1)));
    };
    set(r - 1, 0, z);
    set(r, s, z ^ (z + c));
    set(r, sp, z ^ (z + 2 * c));
    if (r + 1 <= k - 1) {
        set(r + 1, 1, 1 ^ (z + c));
        set(r + 1, 2, 2 ^ (z + 2 * c));
    }
    set(k - 1, 1, 1);
    set(k - 1, 2, 0);
    return g;
}

}  // namespace detail

// B-part assignment separating two members of the structured A-part set:
// the two evaluations of the combined inputs give different outputs. The
// roles of the pair may be swapped internally; the result is verified
// before being returned.
inline Bits distinguishing_gamma(const Bits& sigma1, const Bits& sigma2, int d, int k) {
    SigmaStream s = SigmaStream::make(d, k);
    const MxLayout& lay = s.lay;
    if (sigma1.size() != lay.a_len() || sigma2.size() != lay.a_len())
        throw std::invalid_argument("distinguishing_gamma: A-part length mismatch");
    if (sigma1 == sigma2) throw std::invalid_argument("distinguishing_gamma: no distinguishing input for equal assignments");

    int r = -1, z = -1;
    for (const auto& [L, u] : s.free_cells) {
        if (block_get(sigma1, lay.a_off(L, u), lay.t) != block_get(sigma2, lay.a_off(L, u), lay.t)) {
            r = L;
            z = u;
            break;
        }
    }
    if (r < 0) throw std::invalid_argument("distinguishing_gamma: assignments agree on all free cells");

    int v1 = static_cast<int>(block_get(sigma1, lay.a_off(r, z), lay.t));
    int v2 = static_cast<int>(block_get(sigma2, lay.a_off(r, z), lay.t));

    for (auto [sa, sb] : {std::pair{v1, v2}, std::pair{v2, v1}}) {
        Bits g = detail::build_gamma(lay, s.c, r, z, sa, sb);
        try {
            int o1 = mxpj_bool(mx_combine(sigma1, g, lay), lay);
            int o2 = mxpj_bool(mx_combine(sigma2, g, lay), lay);
            if (o1 != o2) return g;
        } catch (const std::domain_error&) {
            // strict-mode escape; try the swapped roles
        }
    }
    throw std::runtime_error("distinguishing_gamma: construction failed to separate the pair");
}

}  // namespace qbp
