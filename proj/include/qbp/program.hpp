#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbp/bits.hpp"
#include "qbp/linalg.hpp"

namespace qbp {

// ---------------------------------------------------------------------------
// Layered programs with a quantum register and a classical control register
// ---------------------------------------------------------------------------

// One transition: a deterministic map on the classical register plus a
// unitary on the quantum register selected by the current classical state.
// Classical maps need not be reversible.
struct Transition {
    std::vector<uint32_t> cmap;   // size cwidth
    std::vector<UnitaryOp> ops;   // size cwidth, each of dim qwidth

    static Transition identity(size_t cwidth, size_t qwidth) {
        Transition t;
        t.cmap.resize(cwidth);
        for (size_t i = 0; i < cwidth; ++i) t.cmap[i] = static_cast<uint32_t>(i);
        t.ops.assign(cwidth, UnitaryOp::identity(qwidth));
        return t;
    }
};

struct ProgramStep {
    Transition on0, on1;

    const Transition& on(int bit) const { return bit ? on1 : on0; }
};

// Measure one qubit right after the given step; outcome 1 accepts and
// stops, outcome 0 continues with the unrenormalized projection.
struct MeasureEvent {
    size_t step = 0;
    int qubit = 0;
};

struct ProgramMeta {
    std::string builder;
    std::vector<std::pair<std::string, int64_t>> params;

    int64_t param(const std::string& key, int64_t fallback = -1) const {
        for (const auto& [k, v] : params)
            if (k == key) return v;
        return fallback;
    }
};

// k layers sharing one variable order; each of the k*n reads carries its
// own transition pair. Joint accepting index = classical * qwidth + quantum.
struct HybridProgram {
    size_t n = 0;
    size_t qwidth = 1;
    size_t cwidth = 1;
    size_t layers = 1;
    std::vector<uint32_t> order;      // order[pos] = variable read at pos
    uint64_t q0 = 0;
    std::vector<ProgramStep> steps;   // layers * n
    std::vector<uint64_t> accept;
    std::vector<MeasureEvent> measures;
    ProgramMeta meta;

    size_t total_width() const { return cwidth * qwidth; }
    size_t step_count() const { return layers * n; }
    int qubits() const { return ceil_log2(qwidth); }
};

inline void validate_program(const HybridProgram& p) {
    if (p.n == 0 || p.layers == 0) throw std::invalid_argument("program: empty");
    if (!is_pow2(p.qwidth)) throw std::invalid_argument("program: quantum width must be a power of two");
    if (p.cwidth < 1) throw std::invalid_argument("program: classical width must be >= 1");
    if (p.q0 >= p.qwidth) throw std::invalid_argument("program: initial state out of range");
    if (p.order.size() != p.n) throw std::invalid_argument("program: order size mismatch");
    std::vector<uint8_t> seen(p.n, 0);
    for (uint32_t v : p.order) {
        if (v >= p.n || seen[v]) throw std::invalid_argument("program: order is not a permutation");
        seen[v] = 1;
    }
    if (p.steps.size() != p.step_count()) throw std::invalid_argument("program: step count != layers * n");
    for (const ProgramStep& st : p.steps)
        for (const Transition* tr : {&st.on0, &st.on1}) {
            if (tr->cmap.size() != p.cwidth || tr->ops.size() != p.cwidth)
                throw std::invalid_argument("program: transition arity mismatch");
            for (uint32_t c : tr->cmap)
                if (c >= p.cwidth) throw std::invalid_argument("program: classical map out of range");
            for (const UnitaryOp& u : tr->ops) {
                if (u.dim() != p.qwidth) throw std::invalid_argument("program: unitary dimension mismatch");
                if (!is_unitary(u)) throw std::invalid_argument("program: operator fails unitarity check");
            }
        }
    for (uint64_t a : p.accept)
        if (a >= p.total_width()) throw std::invalid_argument("program: accept index out of range");
    size_t prev_step = 0;
    bool first = true;
    for (const MeasureEvent& e : p.measures) {
        if (e.step >= p.step_count()) throw std::invalid_argument("program: measure step out of range");
        if (!first && e.step <= prev_step) throw std::invalid_argument("program: measure steps must strictly increase");
        if (e.qubit < 0 || e.qubit >= p.qubits()) throw std::invalid_argument("program: measure qubit out of range");
        prev_step = e.step;
        first = false;
    }
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

// acceptedMass + |quantum|^2 = 1 throughout a run; norm_drift records the
// worst violation observed so the audit is part of every simulation.
struct StateRecord {
    uint64_t classical = 0;
    StateVector quantum;
    double accepted = 0.0;
    double norm_drift = 0.0;
};

inline StateRecord run(const HybridProgram& p, const Bits& x) {
    if (x.size() != p.n) throw std::invalid_argument("run: input length mismatch");
    StateRecord rec;
    rec.classical = 0;
    rec.quantum = StateVector::basis(p.qwidth, p.q0);
    size_t next_event = 0;
    for (size_t s = 0; s < p.step_count(); ++s) {
        int bit = x[p.order[s % p.n]];
        const Transition& tr = p.steps[s].on(bit);
        rec.quantum = apply(tr.ops[rec.classical], rec.quantum);
        rec.classical = tr.cmap[rec.classical];
        while (next_event < p.measures.size() && p.measures[next_event].step == s) {
            MeasureResult m = measure_qubit(rec.quantum, p.measures[next_event].qubit);
            rec.accepted += m.pr1;
            rec.quantum = std::move(m.proj0);
            ++next_event;
        }
        double drift = std::abs(rec.accepted + rec.quantum.norm2() - 1.0);
        if (drift > rec.norm_drift) rec.norm_drift = drift;
    }
    return rec;
}

inline double accept_probability(const HybridProgram& p, const Bits& x, StateRecord* out = nullptr) {
    StateRecord rec = run(p, x);
    double pr = rec.accepted;
    for (uint64_t a : p.accept)
        if (a / p.qwidth == rec.classical) pr += std::norm(rec.quantum.amps[a % p.qwidth]);
    if (out) *out = std::move(rec);
    return pr;
}

enum class Decision { Zero, One, Undecided };

inline Decision decide_prob(double prob, double eps) {
    if (prob >= 0.5 + eps) return Decision::One;
    if (prob <= 0.5 - eps) return Decision::Zero;
    return Decision::Undecided;
}

inline Decision decide(const HybridProgram& p, const Bits& x, double eps) {
    return decide_prob(accept_probability(p, x), eps);
}

// ---------------------------------------------------------------------------
// Deterministic OBDDs
// ---------------------------------------------------------------------------

// Leveled deterministic diagram; node 0 is the start node by convention.
struct DeterministicObdd {
    size_t n = 0, width = 1;
    std::vector<uint32_t> order;
    std::vector<uint32_t> tr;  // level * width * 2 + node * 2 + bit -> node
    std::vector<uint8_t> accepting;

    uint32_t& tr_at(size_t level, uint32_t node, int bit) { return tr[(level * width + node) * 2 + bit]; }
    uint32_t tr_at(size_t level, uint32_t node, int bit) const { return tr[(level * width + node) * 2 + bit]; }

    bool eval(const Bits& x) const {
        if (x.size() != n) throw std::invalid_argument("DeterministicObdd::eval: input length mismatch");
        uint32_t node = 0;
        for (size_t i = 0; i < n; ++i) node = tr_at(i, node, x[order[i]]);
        return accepting[node] != 0;
    }

    // Same diagram as a program: classical register carries the node,
    // quantum part is trivial.
    HybridProgram to_hybrid_program() const {
        HybridProgram p;
        p.n = n;
        p.qwidth = 1;
        p.cwidth = width;
        p.layers = 1;
        p.order = order;
        p.q0 = 0;
        p.steps.resize(n);
        for (size_t i = 0; i < n; ++i) {
            for (int bit = 0; bit < 2; ++bit) {
                Transition t;
                t.cmap.resize(width);
                for (uint32_t node = 0; node < width; ++node) t.cmap[node] = tr_at(i, node, bit);
                t.ops.assign(width, UnitaryOp::identity(1));
                (bit ? p.steps[i].on1 : p.steps[i].on0) = std::move(t);
            }
        }
        for (uint32_t node = 0; node < width; ++node)
            if (accepting[node]) p.accept.push_back(node);
        p.meta.builder = "obdd";
        return p;
    }
};

}  // namespace qbp
