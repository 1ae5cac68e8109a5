#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qbp/program.hpp"

namespace qbp {

using json = nlohmann::json;

namespace detail {

inline json unitary_to_json(const UnitaryOp& u) {
    if (is_identity(u) && u.is_perm()) return "I";
    json j;
    if (u.is_perm()) {
        j["perm"] = u.perm;
        if (!u.phase.empty()) {
            json ph = json::array();
            for (const cplx& c : u.phase) ph.push_back({c.real(), c.imag()});
            j["phase"] = ph;
        }
    } else {
        json e = json::array();
        for (const cplx& c : u.dense) e.push_back({c.real(), c.imag()});
        j["dense"] = e;
    }
    return j;
}

inline UnitaryOp unitary_from_json(const json& j, size_t dim) {
    if (j.is_string()) {
        if (j.get<std::string>() != "I") throw std::invalid_argument("program json: unknown operator shorthand");
        return UnitaryOp::identity(dim);
    }
    if (j.contains("perm")) {
        std::vector<uint32_t> perm = j.at("perm").get<std::vector<uint32_t>>();
        std::vector<cplx> phase;
        if (j.contains("phase"))
            for (const auto& p : j.at("phase")) phase.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        UnitaryOp u = UnitaryOp::permutation(std::move(perm), std::move(phase));
        if (u.dim() != dim) throw std::invalid_argument("program json: operator dimension mismatch");
        return u;
    }
    if (j.contains("dense")) {
        std::vector<cplx> dense;
        for (const auto& p : j.at("dense")) dense.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        return UnitaryOp::from_dense(dim, std::move(dense));
    }
    throw std::invalid_argument("program json: operator has neither perm nor dense form");
}

inline json transition_to_json(const Transition& t) {
    json j;
    j["c"] = t.cmap;
    json ops = json::array();
    for (const UnitaryOp& u : t.ops) ops.push_back(unitary_to_json(u));
    j["u"] = ops;
    return j;
}

inline Transition transition_from_json(const json& j, size_t cwidth, size_t qwidth) {
    Transition t;
    t.cmap = j.at("c").get<std::vector<uint32_t>>();
    for (const auto& u : j.at("u")) t.ops.push_back(unitary_from_json(u, qwidth));
    if (t.cmap.size() != cwidth || t.ops.size() != cwidth)
        throw std::invalid_argument("program json: transition arity mismatch");
    return t;
}

}  // namespace detail

inline json program_to_json(const HybridProgram& p) {
    json j;
    j["format"] = "qbp-program-v1";
    j["n"] = p.n;
    j["w"] = p.qwidth;
    j["c"] = p.cwidth;
    j["k"] = p.layers;
    j["order"] = p.order;
    j["q0"] = p.q0;
    j["accept"] = p.accept;
    json meas = json::array();
    for (const MeasureEvent& e : p.measures) meas.push_back({{"step", e.step}, {"qubit", e.qubit}});
    j["measure"] = meas;
    json steps = json::array();
    for (const ProgramStep& st : p.steps)
        steps.push_back({{"on0", detail::transition_to_json(st.on0)}, {"on1", detail::transition_to_json(st.on1)}});
    j["steps"] = steps;
    json params = json::object();
    for (const auto& [k_, v] : p.meta.params) params[k_] = v;
    j["meta"] = {{"builder", p.meta.builder}, {"params", params}};
    return j;
}

// Invariant breaches are caught here, at load time.
inline HybridProgram program_from_json(const json& j) {
    if (!j.contains("format") || j.at("format") != "qbp-program-v1")
        throw std::invalid_argument("program json: unknown format");
    HybridProgram p;
    p.n = j.at("n").get<size_t>();
    p.qwidth = j.at("w").get<size_t>();
    p.cwidth = j.at("c").get<size_t>();
    p.layers = j.at("k").get<size_t>();
    p.order = j.at("order").get<std::vector<uint32_t>>();
    p.q0 = j.at("q0").get<uint64_t>();
    p.accept = j.at("accept").get<std::vector<uint64_t>>();
    for (const auto& e : j.at("measure"))
        p.measures.push_back({e.at("step").get<size_t>(), e.at("qubit").get<int>()});
    for (const auto& st : j.at("steps")) {
        ProgramStep s;
        s.on0 = detail::transition_from_json(st.at("on0"), p.cwidth, p.qwidth);
        s.on1 = detail::transition_from_json(st.at("on1"), p.cwidth, p.qwidth);
        p.steps.push_back(std::move(s));
    }
    if (j.contains("meta")) {
        p.meta.builder = j.at("meta").value("builder", "");
        if (j.at("meta").contains("params"))
            for (auto it = j.at("meta").at("params").begin(); it != j.at("meta").at("params").end(); ++it)
                p.meta.params.emplace_back(it.key(), it.value().get<int64_t>());
    }
    validate_program(p);
    return p;
}

inline void save_program(const std::string& path, const HybridProgram& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_program: cannot open " + path);
    out << program_to_json(p).dump(1) << "\n";
}

inline HybridProgram load_program(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_program: cannot open " + path);
    json j;
    in >> j;
    return program_from_json(j);
}

}  // namespace qbp
