// qbp: construct programs, verify them against the classical oracles, and
// run the counting / bound / protocol experiments with CSV reports.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbp/constructions.hpp"
#include "qbp/protocol.hpp"
#include "qbp/random.hpp"
#include "qbp/reorder.hpp"
#include "qbp/serialize.hpp"
#include "qbp/subfunctions.hpp"

using namespace qbp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Reports are CSV with one leading comment line echoing the invocation.
struct Report {
    std::ofstream file;
    std::ostream* out = &std::cout;

    Report(const std::string& path, const std::string& echo) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file " + path);
            out = &file;
        }
        *out << "# " << echo << "\n";
    }
    template <class T>
    Report& operator<<(const T& v) {
        *out << v;
        return *this;
    }
};

// The report path is not part of the experiment config, so identical
// configs written to different files still produce identical bytes.
std::string echo_of(int argc, char** argv) {
    std::string s = "qbp";
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--out") {
            ++i;
            continue;
        }
        s += std::string(" ") + argv[i];
    }
    return s;
}

// ---------------------------------------------------------------------------
// oracles by name
// ---------------------------------------------------------------------------

struct Oracle {
    std::string name;
    size_t n = 0;
    BoolFn fn;
};

Oracle oracle_by_name(std::string name, int d, int k, size_t n_for_generic) {
    // "and2", "xor4", ... fold the input length into the name
    for (const std::string base : {"and", "xor"})
        if (name.size() > base.size() && name.compare(0, base.size(), base) == 0 &&
            name.find_first_not_of("0123456789", base.size()) == std::string::npos) {
            n_for_generic = std::stoul(name.substr(base.size()));
            name = base;
        }
    Oracle o;
    o.name = name;
    if (name == "mxpj") {
        MxLayout lay = MxLayout::make(d, k);
        o.n = lay.n;
        o.fn = [lay](const Bits& x) { return mxpj_bool(x, lay); };
    } else if (name == "pj") {
        PjLayout lay = PjLayout::make(d);
        o.n = lay.n;
        int steps = 2 * k;
        o.fn = [lay, steps](const Bits& x) { return pj_bool(x, lay, steps); };
    } else if (name == "xrpj") {
        XrpjLayout lay = XrpjLayout::make(d);
        o.n = lay.n;
        int steps = 2 * k - 1;
        o.fn = [lay, steps](const Bits& x) { return xrpj_eval(x, lay, steps); };
    } else if (name == "and") {
        o.n = n_for_generic;
        o.fn = [](const Bits& x) {
            int v = 1;
            for (uint8_t b : x) v &= b;
            return v;
        };
    } else if (name == "xor") {
        o.n = n_for_generic;
        o.fn = [](const Bits& x) {
            int v = 0;
            for (uint8_t b : x) v ^= b;
            return v;
        };
    } else if (name == "const0" || name == "const1") {
        o.n = n_for_generic;
        int c = name == "const1";
        o.fn = [c](const Bits&) { return c; };
    } else {
        throw std::invalid_argument("unknown function name: " + name +
                                    " (expected mxpj|pj|xrpj|and|xor|const0|const1)");
    }
    return o;
}

// ---------------------------------------------------------------------------
// subcommand payloads
// ---------------------------------------------------------------------------

struct ConstructArgs {
    std::string kind;
    int d = 2, k = 1;
    std::string out;
};

int run_construct(const ConstructArgs& a) {
    HybridProgram p;
    if (a.kind == "mxpj")
        p = build_mxpj_program({a.d, a.k});
    else if (a.kind == "pj")
        p = build_pj_program({a.d, a.k});
    else if (a.kind == "xrpj")
        p = build_xrpj_program(a.d, a.k);
    else
        throw std::invalid_argument("unknown construction kind: " + a.kind);
    if (a.out.empty()) throw std::invalid_argument("construct: --out is required");
    save_program(a.out, p);
    std::printf("builder=%s d=%d k=%d n=%zu layers=%zu width=%zu (quantum %zu x classical %zu) -> %s\n",
                a.kind.c_str(), a.d, a.k, p.n, p.layers, p.total_width(), p.qwidth, p.cwidth, a.out.c_str());
    return kExitOk;
}

struct VerifyArgs {
    std::string program, oracle, out;
    int d = 0, k = 0;
    bool exhaustive = false;
    uint64_t random_n = 0;
    uint64_t seed = 1;
    double tol = 1e-9;
    std::string echo;
};

int run_verify(const VerifyArgs& a) {
    HybridProgram p = load_program(a.program);
    std::string oname = a.oracle.empty() ? p.meta.builder : a.oracle;
    int d = a.d ? a.d : static_cast<int>(p.meta.param("d", 0));
    int k = a.k ? a.k : static_cast<int>(p.meta.param("k", 0));
    if (d <= 0 || k <= 0) throw std::invalid_argument("verify: oracle parameters unknown, pass --d and --k");
    Oracle o = oracle_by_name(oname, d, k, p.n);
    if (o.n != p.n) throw std::invalid_argument("verify: oracle input length " + std::to_string(o.n) +
                                                " != program n " + std::to_string(p.n));

    bool exhaustive = a.exhaustive || (a.random_n == 0 && p.n <= 20);
    uint64_t total = exhaustive ? (uint64_t(1) << p.n) : a.random_n;
    if (exhaustive && p.n > 24) throw BudgetError("verify: exhaustive sweep over 2^" + std::to_string(p.n) + " inputs refused");
    if (total == 0) total = 10000;

    Report rep(a.out, a.echo + (exhaustive ? " [exhaustive]" : " [seed=" + std::to_string(a.seed) + "]"));
    rep << "input,p,oracle,match\n";
    Rng rng(a.seed);
    uint64_t mismatches = 0;
    double max_drift = 0.0;
    for (uint64_t i = 0; i < total; ++i) {
        Bits x(p.n);
        if (exhaustive)
            x = bits_from_index(i, p.n);
        else
            for (auto& b : x) b = static_cast<uint8_t>(rng.below(2));
        StateRecord rec;
        double pr = accept_probability(p, x, &rec);
        max_drift = std::max(max_drift, rec.norm_drift);
        int want = o.fn(x);
        bool match = std::abs(pr - want) <= a.tol;
        if (!match) ++mismatches;
        rep << bits_to_hex(x) << "," << fmt_double(pr) << "," << want << "," << (match ? 1 : 0) << "\n";
    }
    std::fprintf(stderr, "verify: %llu/%llu matched (oracle %s, tol %s, norm drift %s)\n",
                 static_cast<unsigned long long>(total - mismatches), static_cast<unsigned long long>(total),
                 oname.c_str(), fmt_double(a.tol).c_str(), fmt_double(max_drift).c_str());
    return mismatches == 0 ? kExitOk : kExitMismatch;
}

struct SimulateArgs {
    std::string program, input;
    double epsilon = 0.25;
};

int run_simulate(const SimulateArgs& a) {
    HybridProgram p = load_program(a.program);
    Bits x = hex_to_bits(a.input, p.n);
    StateRecord rec;
    double pr = accept_probability(p, x, &rec);
    Decision dec = decide_prob(pr, a.epsilon);
    const char* ds = dec == Decision::One ? "1" : dec == Decision::Zero ? "0" : "undecided";
    std::printf("input=%s p=%s decision(eps=%s)=%s accepted_mass=%s norm_drift=%s\n", a.input.c_str(),
                fmt_double(pr).c_str(), fmt_double(a.epsilon).c_str(), ds, fmt_double(rec.accepted).c_str(),
                fmt_double(rec.norm_drift).c_str());
    return kExitOk;
}

struct SubfnArgs {
    std::string fn, out, order_csv;
    int n = 0, d = 2, k = 1;
    int cut = 0;
    bool scan = false, min = false;
    uint64_t samples = 200, seed = 1;
    int layers = 0;
    int max_n = 26;
    std::string echo;
};

int run_subfunctions(const SubfnArgs& a) {
    Oracle o = oracle_by_name(a.fn, a.d, a.k, static_cast<size_t>(a.n));
    if (o.n == 0) throw std::invalid_argument("subfunctions: pass --n for generic functions");
    std::vector<uint32_t> order(o.n);
    for (size_t i = 0; i < o.n; ++i) order[i] = static_cast<uint32_t>(i);
    if (!a.order_csv.empty()) {
        order.clear();
        std::stringstream ss(a.order_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) order.push_back(static_cast<uint32_t>(std::stoul(tok)));
        if (order.size() != o.n) throw std::invalid_argument("subfunctions: order length != n");
    }

    Report rep(a.out, a.echo + (a.min && o.n > 6 ? " [seed=" + std::to_string(a.seed) + "]" : ""));
    rep << "function,n,order,cut,N_pi,log2N,bound_form,exponent,implied_width\n";
    auto emit = [&](const std::string& ord, const std::string& cut, uint64_t count) {
        double log2n = count ? std::log2(static_cast<double>(count)) : 0.0;
        std::string bound_form, exponent, iw;
        if (a.layers > 0) {
            uint64_t w = implied_width(log2n, a.layers);
            bound_form = "proof";
            exponent = fmt_double(log2_bound_proof(a.layers, static_cast<double>(w)));
            iw = std::to_string(w);
        }
        rep << a.fn << "," << o.n << "," << ord << "," << cut << "," << count << "," << fmt_double(log2n) << ","
            << bound_form << "," << exponent << "," << iw << "\n";
    };
    auto order_str = [&]() {
        std::string s;
        for (size_t i = 0; i < order.size(); ++i) s += (i ? " " : "") + std::to_string(order[i]);
        return s;
    };

    if (a.min) {
        Rng rng(a.seed);
        MinCountResult mc = count_min(o.fn, o.n, a.samples, &rng, static_cast<size_t>(a.max_n));
        emit(mc.exact ? "min-exact(" + std::to_string(mc.orders_tested) + " orders)"
                      : "min-sampled(" + std::to_string(mc.orders_tested) + " orders; seed " + std::to_string(a.seed) + ")",
             "max", mc.value);
    } else if (a.scan) {
        size_t lo = o.n > 2 ? 2 : 1, hi = o.n > 2 ? o.n - 1 : 1;
        for (size_t u = lo; u <= hi; ++u)
            emit(order_str(), std::to_string(u), count_subfunctions(o.fn, o.n, CutPartition(order, u), a.max_n));
    } else {
        if (a.cut < 1 || static_cast<size_t>(a.cut) >= o.n)
            throw std::invalid_argument("subfunctions: --cut must be in [1, n)");
        emit(order_str(), std::to_string(a.cut),
             count_subfunctions(o.fn, o.n, CutPartition(order, static_cast<size_t>(a.cut)), a.max_n));
    }
    return kExitOk;
}

struct BoundsArgs {
    std::string form = "proof", out;
    int t = 0, l = -1, k = 0;
    double w = 0;
    bool implied = false;
    double logn = -1;
    std::string echo;
};

int run_bounds(const BoundsArgs& a) {
    Report rep(a.out, a.echo);
    if (a.implied) {
        if (a.logn < 0 || a.k < 1) throw std::invalid_argument("bounds: --implied needs --logn and --k");
        uint64_t w = implied_width(a.logn, a.k);
        rep << "logN,k,implied_width,exponent\n";
        rep << fmt_double(a.logn) << "," << a.k << "," << w << ","
            << fmt_double(log2_bound_proof(a.k, static_cast<double>(w))) << "\n";
        return kExitOk;
    }
    rep << "form,t,k,l,w,exponent,bound_log10\n";
    double exponent;
    int t = a.t, k = a.k, l = a.l;
    double w = a.w;
    if (a.form == "theorem") {
        if (t < 1 || l < 0) throw std::invalid_argument("bounds: theorem form needs --t and --l");
        exponent = log2_bound_theorem(t, l);
        k = (t + 1) / 2;
        w = std::ldexp(1.0, l);
    } else if (a.form == "proof") {
        if (k < 1) throw std::invalid_argument("bounds: proof form needs --k");
        if (l >= 0)
            w = std::ldexp(1.0, l);
        else if (w < 1)
            throw std::invalid_argument("bounds: proof form needs --l or --w");
        exponent = log2_bound_proof(k, w);
        t = 2 * k - 1;
    } else {
        throw std::invalid_argument("bounds: unknown form " + a.form);
    }
    rep << a.form << "," << t << "," << k << "," << (l >= 0 ? std::to_string(l) : "") << "," << fmt_double(w) << ","
        << fmt_double(exponent) << "," << fmt_double(exponent * std::log10(2.0)) << "\n";
    return kExitOk;
}

struct ProtocolArgs {
    std::string mode, program, out;
    size_t cut = 0;
    double tol = 1e-9;
    double delta = 0.0, epsilon = 0.25;
    uint64_t gammas = 0, seed = 1;
    std::string echo;
};

int run_protocol(const ProtocolArgs& a) {
    HybridProgram p = load_program(a.program);
    size_t cut = a.cut ? a.cut : p.n / 2;
    MemorylessProtocol r = from_qobdd(p, cut);

    if (a.mode == "emulate") {
        // a protocol document, not a CSV report: no comment header
        std::string doc = protocol_to_json(r).dump(1) + "\n";
        if (a.out.empty()) {
            std::cout << doc;
        } else {
            std::ofstream f(a.out);
            if (!f) throw std::runtime_error("cannot open output file " + a.out);
            f << doc;
        }
        std::fprintf(stderr, "emulate: t=%zu l=%zu u=%zu halves 2^%zu x 2^%zu\n", r.t, r.l, r.u, r.half_a(),
                     r.half_b());
        return kExitOk;
    }

    if (r.half_a() > 14 || r.half_b() > 14) throw BudgetError("protocol: half assignments exceed 2^14, refuse sweep");
    const uint64_t na = uint64_t(1) << r.half_a(), nb = uint64_t(1) << r.half_b();

    if (a.mode == "check-lemma1") {
        Report rep(a.out, a.echo);
        rep << "sigma,gamma,p_direct,p_product,gap\n";
        double max_gap = 0.0;
        for (uint64_t s = 0; s < na; ++s)
            for (uint64_t g = 0; g < nb; ++g) {
                double direct = direct_probability(r, s, g);
                double product = product_probability(matrix_sequence(r, s, g));
                double gap = std::abs(direct - product);
                max_gap = std::max(max_gap, gap);
                rep << s << "," << g << "," << fmt_double(direct) << "," << fmt_double(product) << ","
                    << fmt_double(gap) << "\n";
            }
        std::fprintf(stderr, "check-lemma1: max gap %s over %llu inputs (tol %s)\n", fmt_double(max_gap).c_str(),
                     static_cast<unsigned long long>(na * nb), fmt_double(a.tol).c_str());
        return max_gap <= a.tol ? kExitOk : kExitMismatch;
    }

    if (a.mode == "buckets") {
        const size_t k = (r.t + 1) / 2;
        double delta = a.delta;
        if (delta <= 0.0)
            delta = a.epsilon * std::pow(2.0, -3.0 * double(k)) * std::pow(double(r.msg_dim()) + 2.0, -2.0 * double(k));
        std::vector<uint64_t> sigmas, gammas;
        for (uint64_t s = 0; s < na; ++s) sigmas.push_back(s);
        if (a.gammas == 0 || a.gammas >= nb)
            for (uint64_t g = 0; g < nb; ++g) gammas.push_back(g);
        else {
            Rng rng(a.seed);
            for (uint64_t i = 0; i < a.gammas; ++i) gammas.push_back(rng.below(nb));
        }
        BucketReport br = delta_bucket_experiment(r, delta, a.epsilon, sigmas, gammas);
        bool sampled = a.gammas != 0 && a.gammas < nb;
        Report rep(a.out, a.echo + (sampled ? " [seed=" + std::to_string(a.seed) + "]" : ""));
        rep << "sigma,bucket,gamma,p_direct,p_product,gap,bound\n";
        for (const BucketRow& row : br.rows)
            rep << row.sigma << "," << row.bucket << "," << row.gamma << "," << fmt_double(row.p_direct) << ","
                << fmt_double(row.p_product) << "," << fmt_double(row.gap) << "," << fmt_double(row.bound) << "\n";
        std::fprintf(stderr,
                     "buckets: delta=%s, %zu sigmas in %zu buckets (ceiling log2 %.1f), %zu same-bucket pairs, "
                     "max pair gap %s < bound %s, %zu gap violations, %zu decision conflicts\n",
                     fmt_double(delta).c_str(), br.sigma_count, br.bucket_count, br.ceiling_log2,
                     br.same_bucket_pairs, fmt_double(br.max_pair_gap).c_str(), fmt_double(br.bound).c_str(),
                     br.gap_violations, br.decision_conflicts);
        return br.gap_violations == 0 && br.decision_conflicts == 0 ? kExitOk : kExitMismatch;
    }

    throw std::invalid_argument("protocol: unknown mode " + a.mode + " (expected emulate|check-lemma1|buckets)");
}

struct HierArgs {
    std::string widths_csv = "1", out;
    double k = 1, r = 1, n = 1, C = 1, C1 = 1;
    double d = 0, v = 0;
    std::string echo;
};

int run_hierarchy(const HierArgs& a) {
    std::vector<uint64_t> widths;
    std::stringstream ss(a.widths_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) widths.push_back(std::stoull(tok));
    GkrReport g = gkr_check(widths, a.k, a.r, a.n, a.C, a.C1);

    Report rep(a.out, a.echo);
    rep << "row,w,v,value,detail\n";
    for (const auto& c : g.closure)
        rep << "closure," << c.w << ",," << (c.root_in && c.root_sq_in ? 1 : 0) << ",root=" << c.root
            << (c.root_in ? " in" : " MISSING") << " root^2=" << c.root_sq << (c.root_sq_in ? " in" : " MISSING")
            << "\n";
    for (const auto& rr : g.ratios)
        rep << "ratio," << rr.w << ",," << fmt_double(rr.ratio) << ",k^2w^2log2w=" << fmt_double(rr.lhs) << " over n="
            << fmt_double(a.n) << "\n";
    for (const auto& pr : g.pairs)
        rep << "pair," << pr.w << "," << pr.v << "," << fmt_double(pr.value) << ","
            << (pr.positive ? "positive" : "NOT positive") << "\n";
    if (a.d > 0) {
        double v = a.v > 0 ? a.v : static_cast<double>(widths.front());
        double e = rate_exponent(a.d, v, a.k, a.r, a.C, a.C1);
        rep << "rate," << fmt_double(a.d) << "," << fmt_double(v) << "," << fmt_double(e) << ","
            << (e > 0 ? "exponent positive (count exceeds bound)" : "exponent not positive") << "\n";
    }
    std::fprintf(stderr, "hierarchy-check: closure %s, condition-3 %s\n", g.closure_ok ? "holds" : "FAILS",
                 g.pairs_all_positive ? "all positive" : "has non-positive pairs");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum branching-program laboratory"};
    app.require_subcommand(1);
    std::string echo = echo_of(argc, argv);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build a program and write it to a file");
    construct->add_option("kind", ca.kind, "mxpj | pj | xrpj")->required();
    construct->add_option("--d", ca.d, "vertex count per side (power of two)")->required();
    construct->add_option("--k", ca.k, "layer parameter")->required();
    construct->add_option("--out", ca.out, "output program file")->required();

    VerifyArgs va;
    va.echo = echo;
    auto* verify = app.add_subcommand("verify", "compare a program against its classical oracle");
    verify->add_option("--program", va.program)->required();
    verify->add_option("--oracle", va.oracle, "mxpj | pj | xrpj (default: program metadata)");
    verify->add_option("--d", va.d);
    verify->add_option("--k", va.k);
    verify->add_flag("--exhaustive", va.exhaustive);
    verify->add_option("--random", va.random_n, "number of random inputs");
    verify->add_option("--seed", va.seed);
    verify->add_option("--tol", va.tol);
    verify->add_option("--out", va.out, "CSV report path (default stdout)");

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "run a program on one input");
    simulate->add_option("--program", sa.program)->required();
    simulate->add_option("--input", sa.input, "hex-encoded bits, most significant block first")->required();
    simulate->add_option("--epsilon", sa.epsilon);

    SubfnArgs fa;
    fa.echo = echo;
    auto* subfn = app.add_subcommand("subfunctions", "exact subfunction counting");
    subfn->add_option("--fn", fa.fn, "mxpj | pj | xrpj | and | xor | const0 | const1")->required();
    subfn->add_option("--n", fa.n, "input length for generic functions");
    subfn->add_option("--d", fa.d);
    subfn->add_option("--k", fa.k);
    subfn->add_option("--cut", fa.cut, "cut position u (X_A = first u variables)");
    subfn->add_flag("--scan", fa.scan, "all cuts of the given order");
    subfn->add_flag("--min", fa.min, "minimum over orders (exact for n <= 6)");
    subfn->add_option("--order", fa.order_csv, "comma-separated variable order");
    subfn->add_option("--samples", fa.samples, "sampled orders for --min when n > 6");
    subfn->add_option("--seed", fa.seed);
    subfn->add_option("--layers", fa.layers, "also report implied width for this layer count");
    subfn->add_option("--max-n", fa.max_n, "enumeration budget guard");
    subfn->add_option("--out", fa.out);

    BoundsArgs ba;
    ba.echo = echo;
    auto* bounds = app.add_subcommand("bounds", "bound-formula calculator");
    bounds->add_option("--form", ba.form, "theorem | proof");
    bounds->add_option("--t", ba.t, "rounds (theorem form, odd)");
    bounds->add_option("--l", ba.l, "message qubits");
    bounds->add_option("--k", ba.k, "layers (proof form)");
    bounds->add_option("--w", ba.w, "width (proof form alternative to --l)");
    bounds->add_flag("--implied", ba.implied, "solve for the least width covering --logn");
    bounds->add_option("--logn", ba.logn, "log2 of the subfunction count");
    bounds->add_option("--out", ba.out);

    ProtocolArgs pa;
    pa.echo = echo;
    auto* protocol = app.add_subcommand("protocol", "memoryless-protocol experiments");
    protocol->add_option("mode", pa.mode, "emulate | check-lemma1 | buckets")->required();
    protocol->add_option("--program", pa.program)->required();
    protocol->add_option("--cut", pa.cut, "cut position (default n/2)");
    protocol->add_option("--tol", pa.tol);
    protocol->add_option("--delta", pa.delta, "bucket grid (default from --epsilon)");
    protocol->add_option("--epsilon", pa.epsilon);
    protocol->add_option("--gammas", pa.gammas, "sample of gammas per pair (default: all)");
    protocol->add_option("--seed", pa.seed);
    protocol->add_option("--out", pa.out);

    HierArgs ha;
    ha.echo = echo;
    auto* hier = app.add_subcommand("hierarchy-check", "width-set condition report");
    hier->add_option("--widths", ha.widths_csv, "comma-separated widths")->required();
    hier->add_option("--k", ha.k)->required();
    hier->add_option("--r", ha.r)->required();
    hier->add_option("--n", ha.n)->required();
    hier->add_option("--C", ha.C);
    hier->add_option("--C1", ha.C1);
    hier->add_option("--d", ha.d, "also report the rate exponent at this d");
    hier->add_option("--v", ha.v, "width used in the rate exponent (default: first of --widths)");
    hier->add_option("--out", ha.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*construct) return run_construct(ca);
        if (*verify) return run_verify(va);
        if (*simulate) return run_simulate(sa);
        if (*subfn) return run_subfunctions(fa);
        if (*bounds) return run_bounds(ba);
        if (*protocol) return run_protocol(pa);
        if (*hier) return run_hierarchy(ha);
    } catch (const BudgetError& e) {
        std::fprintf(stderr, "error (budget): %s\n", e.what());
        return kExitBudget;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
    return kExitInvalid;
}
