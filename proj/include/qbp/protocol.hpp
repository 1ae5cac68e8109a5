#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qbp/linalg.hpp"
#include "qbp/program.hpp"
#include "qbp/serialize.hpp"

namespace qbp {

// ---------------------------------------------------------------------------
// Memoryless protocols
// ---------------------------------------------------------------------------

// What a player does in one round, as a function of their input half: a
// unitary on the message space, optionally interrupted by one
// measure-accept-and-stop event (outcome 1 adds to the accept mass,
// outcome 0 continues unrenormalized).
struct RoundAction {
    UnitaryOp pre;
    std::optional<uint64_t> mask;  // basis states counted as outcome 1
    UnitaryOp post;
};

struct RoundBehavior {
    bool alice = true;
    std::vector<RoundAction> actions;  // indexed by the player's half assignment
};

// t message rounds (Alice first, alternating) plus Bob's final processing
// and accept measurement. Behaviors are per-round tables over the acting
// player's input half; there is deliberately no field that could carry
// state across rounds.
struct MemorylessProtocol {
    size_t t = 1, l = 0;
    size_t n = 0, u = 0;
    std::vector<uint32_t> order;
    uint64_t q0 = 0;
    std::vector<RoundBehavior> rounds;  // size t
    RoundBehavior final_round;          // Bob's, table over gamma
    std::vector<uint64_t> accept;

    size_t msg_dim() const { return size_t(1) << l; }
    size_t half_a() const { return u; }
    size_t half_b() const { return n - u; }

    uint64_t sigma_of(const Bits& x) const {
        uint64_t s = 0;
        for (size_t p = 0; p < u; ++p) s = (s << 1) | x[order[p]];
        return s;
    }
    uint64_t gamma_of(const Bits& x) const {
        uint64_t g = 0;
        for (size_t p = u; p < n; ++p) g = (g << 1) | x[order[p]];
        return g;
    }
};

// ---------------------------------------------------------------------------
// Emulation of a layered quantum program
// ---------------------------------------------------------------------------

// Layer i's reads before the cut become Alice's round 2i-1, the reads
// after the cut become Bob's round 2i; Bob's last half-layer carries the
// accept measurement. t = 2k-1 and the message holds the full quantum
// register (2^l = w).
inline MemorylessProtocol from_qobdd(const HybridProgram& p, size_t cut) {
    if (p.cwidth != 1) throw std::invalid_argument("from_qobdd: hybrid programs (c > 1) are unsupported for emulation");
    if (!(cut > 1 && cut < p.n)) throw std::invalid_argument("from_qobdd: cut must satisfy 1 < u < n");
    validate_program(p);

    MemorylessProtocol r;
    r.t = 2 * p.layers - 1;
    r.l = static_cast<size_t>(ceil_log2(p.qwidth));
    r.n = p.n;
    r.u = cut;
    r.order = p.order;
    r.q0 = p.q0;
    r.accept = p.accept;

    if (!p.measures.empty() && p.qwidth > 64)
        throw std::invalid_argument("from_qobdd: measurement masks need message dimension <= 64");

    // measure events per half-layer: (layer, in Bob's half?) -> position
    std::map<std::pair<size_t, bool>, size_t> events;
    for (const MeasureEvent& e : p.measures) {
        size_t layer = e.step / p.n, pos = e.step % p.n;
        auto key = std::make_pair(layer, pos >= cut);
        if (events.count(key)) throw std::invalid_argument("from_qobdd: at most one measure event per half-layer");
        events[key] = e.step;
    }

    auto build_behavior = [&](size_t layer, bool bob_half) {
        const size_t from = layer * p.n + (bob_half ? cut : 0);
        const size_t to = layer * p.n + (bob_half ? p.n : cut);
        const size_t half = bob_half ? r.half_b() : r.half_a();
        RoundBehavior rb;
        rb.alice = !bob_half;
        rb.actions.resize(size_t(1) << half);
        auto key = std::make_pair(layer, bob_half);
        std::optional<size_t> ev = events.count(key) ? std::optional<size_t>(events.at(key)) : std::nullopt;
        for (uint64_t h = 0; h < (uint64_t(1) << half); ++h) {
            RoundAction act;
            act.pre = UnitaryOp::identity(p.qwidth);
            act.post = UnitaryOp::identity(p.qwidth);
            bool after_event = false;
            for (size_t s = from; s < to; ++s) {
                size_t hp = (s % p.n) - (bob_half ? cut : 0);
                int bit = (h >> (half - 1 - hp)) & 1;
                const UnitaryOp& op = p.steps[s].on(bit).ops[0];
                (after_event ? act.post : act.pre) = compose(op, after_event ? act.post : act.pre);
                if (ev && *ev == s) {
                    int qubit = 0;
                    for (const MeasureEvent& e : p.measures)
                        if (e.step == s) qubit = e.qubit;
                    int bitpos = ceil_log2(p.qwidth) - 1 - qubit;
                    uint64_t mask = 0;
                    for (uint64_t st = 0; st < p.qwidth; ++st)
                        if ((st >> bitpos) & 1) mask |= uint64_t(1) << st;
                    act.mask = mask;
                    after_event = true;
                }
            }
            rb.actions[h] = std::move(act);
        }
        return rb;
    };

    for (size_t layer = 0; layer < p.layers; ++layer) {
        r.rounds.push_back(build_behavior(layer, false));          // Alice, round 2*layer+1
        if (layer + 1 < p.layers) r.rounds.push_back(build_behavior(layer, true));  // Bob
    }
    r.final_round = build_behavior(p.layers - 1, true);
    return r;
}

// ---------------------------------------------------------------------------
// Direct simulation
// ---------------------------------------------------------------------------

inline void apply_action(const RoundAction& act, StateVector& state, double& accepted) {
    state = apply(act.pre, state);
    if (act.mask) {
        MaskMeasure m = measure_mask(state, *act.mask);
        accepted += m.pr1;
        state = std::move(m.cont);
    }
    state = apply(act.post, state);
}

// Per-round accepted mass can be captured for the matrix representation.
inline double direct_probability(const MemorylessProtocol& r, uint64_t sigma, uint64_t gamma,
                                 std::vector<double>* round_mass = nullptr) {
    StateVector state = StateVector::basis(r.msg_dim(), r.q0);
    double accepted = 0.0;
    if (round_mass) round_mass->assign(r.rounds.size() + 1, 0.0);
    for (size_t i = 0; i < r.rounds.size(); ++i) {
        const RoundBehavior& rb = r.rounds[i];
        double before = accepted;
        apply_action(rb.actions[rb.alice ? sigma : gamma], state, accepted);
        if (round_mass) (*round_mass)[i] = accepted - before;
    }
    double before = accepted;
    apply_action(r.final_round.actions[gamma], state, accepted);
    if (round_mass) (*round_mass)[r.rounds.size()] = accepted - before;
    for (uint64_t a : r.accept) accepted += std::norm(state.amps[a]);
    return accepted;
}

inline double direct_probability(const MemorylessProtocol& r, const Bits& x) {
    return direct_probability(r, r.sigma_of(x), r.gamma_of(x));
}

// ---------------------------------------------------------------------------
// Matrix-sequence representation
// ---------------------------------------------------------------------------

// The (2^l+2)-square matrices acting on row vectors: the first 2^l rows
// carry outgoing message amplitudes, row 2^l+1 is (0..0,1,pr), row 2^l+2
// is (0..0,0,1). mats alternate gamma, sigma, ..., ending on the final
// gamma matrix; p0 is the first-round row with its fixed 1 entry, q the
// accepting column with tail (0, 1).
struct MatrixSequence {
    size_t l = 0, k = 1;
    std::vector<ComplexMatrix> mats;  // 2k-1 of them
    std::vector<cplx> p0;             // 2^l + 2
    std::vector<double> q;            // 2^l + 2
};

namespace detail {

inline ComplexMatrix action_row_matrix(const RoundAction& act, size_t msg_dim, double pr) {
    const size_t D = msg_dim + 2;
    ComplexMatrix col = act.pre.to_dense();
    if (act.mask) {
        for (size_t row = 0; row < msg_dim; ++row)
            if ((*act.mask >> row) & 1)
                for (size_t c = 0; c < msg_dim; ++c) col.at(row, c) = 0.0;
    }
    col = cm_mul(act.post.to_dense(), col);
    ComplexMatrix m(D, D);
    for (size_t r = 0; r < msg_dim; ++r)
        for (size_t c = 0; c < msg_dim; ++c) m.at(r, c) = col.at(c, r);  // row convention
    m.at(msg_dim, msg_dim) = 1.0;
    m.at(msg_dim, msg_dim + 1) = pr;
    m.at(msg_dim + 1, msg_dim + 1) = 1.0;
    return m;
}

}  // namespace detail

inline MatrixSequence matrix_sequence(const MemorylessProtocol& r, uint64_t sigma, uint64_t gamma) {
    std::vector<double> mass;
    direct_probability(r, sigma, gamma, &mass);

    MatrixSequence seq;
    seq.l = r.l;
    seq.k = (r.t + 1) / 2;
    const size_t D = r.msg_dim() + 2;

    // first round: p0 row
    {
        const RoundAction& act = r.rounds[0].actions[sigma];
        StateVector e0 = StateVector::basis(r.msg_dim(), r.q0);
        double captured = 0.0;
        apply_action(act, e0, captured);
        seq.p0.assign(D, cplx(0.0, 0.0));
        for (size_t j = 0; j < r.msg_dim(); ++j) seq.p0[j] = e0.amps[j];
        seq.p0[r.msg_dim()] = 1.0;
        seq.p0[r.msg_dim() + 1] = captured;
    }

    for (size_t i = 1; i < r.rounds.size(); ++i) {
        const RoundBehavior& rb = r.rounds[i];
        seq.mats.push_back(detail::action_row_matrix(rb.actions[rb.alice ? sigma : gamma], r.msg_dim(), mass[i]));
    }
    seq.mats.push_back(detail::action_row_matrix(r.final_round.actions[gamma], r.msg_dim(), mass[r.rounds.size()]));

    seq.q.assign(D, 0.0);
    for (uint64_t a : r.accept) seq.q[a] = 1.0;
    seq.q[r.msg_dim()] = 0.0;
    seq.q[r.msg_dim() + 1] = 1.0;
    return seq;
}

// sqr(p0 * M1 * ... * M_{2k-1}) . q, evaluated exactly as displayed.
inline double product_probability(const MatrixSequence& seq) {
    std::vector<cplx> v = seq.p0;
    const size_t D = v.size();
    for (const ComplexMatrix& m : seq.mats) {
        std::vector<cplx> w(D, cplx(0.0, 0.0));
        for (size_t r = 0; r < D; ++r) {
            if (v[r] == cplx(0.0, 0.0)) continue;
            for (size_t c = 0; c < D; ++c) w[c] += v[r] * m.at(r, c);
        }
        v = std::move(w);
    }
    std::vector<double> s = sqr_map(v);
    double out = 0.0;
    for (size_t i = 0; i < D; ++i) out += s[i] * seq.q[i];
    return out;
}

// ---------------------------------------------------------------------------
// Complex -> real embedded evaluation
// ---------------------------------------------------------------------------

struct RealSequence {
    size_t l = 0;
    RealMatrix p0;                    // 2 x (2^{l+1}+4)
    std::vector<RealMatrix> mats;     // square, 2^{l+1}+4
    std::vector<double> q;            // 2^{l+1}+4, accepting indicators doubled
};

inline RealSequence real_embedded_sequence(const MatrixSequence& seq) {
    RealSequence rs;
    rs.l = seq.l;
    ComplexMatrix p0(1, seq.p0.size());
    for (size_t j = 0; j < seq.p0.size(); ++j) p0.at(0, j) = seq.p0[j];
    rs.p0 = embed_real(p0);
    for (const ComplexMatrix& m : seq.mats) rs.mats.push_back(embed_real(m));
    rs.q.resize(2 * seq.q.size());
    for (size_t j = 0; j < seq.q.size(); ++j) rs.q[2 * j] = rs.q[2 * j + 1] = seq.q[j];
    return rs;
}

inline double product_probability_real(const RealSequence& rs) {
    RealMatrix acc = rs.p0;
    for (const RealMatrix& m : rs.mats) acc = rm_mul(acc, m);
    const size_t D2 = acc.cols;
    const size_t msg2 = D2 - 4;
    double out = 0.0;
    for (size_t j = 0; j < D2; ++j) {
        double e = acc.at(0, j);
        double s = j < msg2 ? e * e : std::abs(e);
        out += s * rs.q[j];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Delta-grid bucketing experiment
// ---------------------------------------------------------------------------

struct BucketRow {
    uint64_t sigma = 0;
    size_t bucket = 0;
    uint64_t gamma = 0;
    double p_direct = 0.0;
    double p_product = 0.0;
    double gap = 0.0;  // |p_direct - p_product|
    double bound = 0.0;
};

struct BucketReport {
    size_t sigma_count = 0;
    size_t bucket_count = 0;
    double ceiling_log2 = 0.0;  // log2 of (2/delta)^entries
    size_t entries_per_sigma = 0;
    size_t same_bucket_pairs = 0;
    size_t comparisons = 0;
    double bound = 0.0;
    double max_pair_gap = 0.0;
    size_t gap_violations = 0;
    size_t decision_conflicts = 0;
    std::vector<BucketRow> rows;
};

// Buckets sigmas by flooring every embedded sigma-side entry to the
// delta grid, then asserts the closeness bound and the eps vs eps/2
// decision agreement on every same-bucket pair and tested gamma.
// Requires a measurement-free protocol so the sigma-side matrices do not
// depend on gamma.
inline BucketReport delta_bucket_experiment(const MemorylessProtocol& r, double delta, double eps,
                                            const std::vector<uint64_t>& sigmas,
                                            const std::vector<uint64_t>& gammas) {
    if (delta <= 0.0) throw std::invalid_argument("delta_bucket_experiment: delta must be positive");
    for (const RoundBehavior& rb : r.rounds)
        for (const RoundAction& a : rb.actions)
            if (a.mask) throw std::invalid_argument("delta_bucket_experiment: protocol must be measurement-free");
    for (const RoundAction& a : r.final_round.actions)
        if (a.mask) throw std::invalid_argument("delta_bucket_experiment: protocol must be measurement-free");

    const size_t k = (r.t + 1) / 2;
    const double bound = std::pow(2.0, 3.0 * static_cast<double>(k) - 1.0) *
                         std::pow(static_cast<double>(r.msg_dim()) + 2.0, 2.0 * static_cast<double>(k)) * delta;

    BucketReport rep;
    rep.sigma_count = sigmas.size();
    rep.bound = bound;

    const uint64_t g0 = gammas.empty() ? 0 : gammas[0];
    std::map<std::vector<int64_t>, size_t> bucket_ids;
    std::vector<size_t> bucket_of(sigmas.size());
    std::vector<std::vector<size_t>> members;
    for (size_t si = 0; si < sigmas.size(); ++si) {
        MatrixSequence seq = matrix_sequence(r, sigmas[si], g0);
        RealSequence rs = real_embedded_sequence(seq);
        std::vector<int64_t> key;
        for (double e : rs.p0.a) key.push_back(static_cast<int64_t>(std::floor(e / delta)));
        for (size_t mi = 1; mi < rs.mats.size(); mi += 2)  // sigma-dependent matrices
            for (double e : rs.mats[mi].a) key.push_back(static_cast<int64_t>(std::floor(e / delta)));
        rep.entries_per_sigma = key.size();
        auto [it, fresh] = bucket_ids.try_emplace(key, bucket_ids.size());
        if (fresh) members.emplace_back();
        bucket_of[si] = it->second;
        members[it->second].push_back(si);
    }
    rep.bucket_count = bucket_ids.size();
    rep.ceiling_log2 = static_cast<double>(rep.entries_per_sigma) * std::log2(2.0 / delta);

    for (size_t si = 0; si < sigmas.size(); ++si)
        for (uint64_t g : gammas) {
            BucketRow row;
            row.sigma = sigmas[si];
            row.bucket = bucket_of[si];
            row.gamma = g;
            row.p_direct = direct_probability(r, sigmas[si], g);
            row.p_product = product_probability(matrix_sequence(r, sigmas[si], g));
            row.gap = std::abs(row.p_direct - row.p_product);
            row.bound = bound;
            rep.rows.push_back(row);
        }

    auto conflict = [&](double p, double p2) {
        Decision de = decide_prob(p, eps);
        Decision dh = decide_prob(p2, eps / 2.0);
        return (de == Decision::One && dh != Decision::One) || (de == Decision::Zero && dh != Decision::Zero);
    };

    for (const auto& grp : members) {
        for (size_t i = 0; i < grp.size(); ++i)
            for (size_t j = i + 1; j < grp.size(); ++j) {
                ++rep.same_bucket_pairs;
                for (uint64_t g : gammas) {
                    ++rep.comparisons;
                    double p = direct_probability(r, sigmas[grp[i]], g);
                    double p2 = direct_probability(r, sigmas[grp[j]], g);
                    double gap = std::abs(p - p2);
                    if (gap > rep.max_pair_gap) rep.max_pair_gap = gap;
                    if (!(gap < bound)) ++rep.gap_violations;
                    if (conflict(p, p2) || conflict(p2, p)) ++rep.decision_conflicts;
                }
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization (structure review + reports)
// ---------------------------------------------------------------------------

inline json protocol_to_json(const MemorylessProtocol& r) {
    auto action_json = [](const RoundAction& a) {
        json j;
        j["pre"] = detail::unitary_to_json(a.pre);
        if (a.mask) j["mask"] = *a.mask;
        j["post"] = detail::unitary_to_json(a.post);
        return j;
    };
    auto behavior_json = [&](const RoundBehavior& rb) {
        json acts = json::array();
        for (const RoundAction& a : rb.actions) acts.push_back(action_json(a));
        return json{{"alice", rb.alice}, {"actions", acts}};
    };
    json rounds = json::array();
    for (const RoundBehavior& rb : r.rounds) rounds.push_back(behavior_json(rb));
    return json{{"t", r.t},     {"l", r.l},           {"n", r.n},
                {"u", r.u},     {"order", r.order},   {"q0", r.q0},
                {"rounds", rounds}, {"final", behavior_json(r.final_round)}, {"accept", r.accept}};
}

}  // namespace qbp
