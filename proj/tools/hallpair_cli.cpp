#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hallpair/pipeline.hpp"
#include "hallpair/verify.hpp"

using namespace hallpair;

namespace {

struct RunOpts {
    std::string geometry = "conifold";
    int degree = 1;
    int rank = 2;
    std::string chi;
    std::string mode = "value";
    std::vector<std::string> sweeps;
    std::string only;
};

void add_class_flags(CLI::App* cmd, RunOpts& o) {
    cmd->add_option("--geometry", o.geometry, "builtin name or geometry file path");
    cmd->add_option("--degree", o.degree, "sheaf degree of the target class");
    cmd->add_option("--rank", o.rank, "pair rank of the target class");
    cmd->add_option("--chi", o.chi, "chi symbol binding for the sheaf class, e.g. 2q");
}

Invariant run_invariant(const RunOpts& o, const Geometry& g, DirectResult* direct) {
    PairClass cls = g.pair_class(o.degree, o.rank);
    if (o.rank == 2) {
        DirectResult dr = compute_direct(cls, g);
        if (direct) *direct = dr;
        return dr.invariant;
    }
    // other ranks go through the general closed-form sum
    return wallcrossing_general(g.pair_class(o.degree, 0), o.rank, g);
}

int cmd_compute(const RunOpts& o, bool force_trace) {
    Geometry g = resolve_geometry(o.geometry, o.degree, o.chi);
    DirectResult dr;
    Invariant inv = run_invariant(o, g, &dr);
    std::string mode = force_trace && o.mode == "value" ? "trace" : o.mode;
    if (mode == "trace") {
        std::cout << dr.trace.render_text();
        std::cout << "invariant " << inv.class_label.str() << " = " << inv.value.str() << "\n";
    } else if (mode == "latex" && force_trace) {
        // bracket-notation rendering of the assembled element and its normal form
        std::cout << dr.trace.render_latex();
        std::cout << "\\bar\\epsilon = " << dr.epsilon.latex() << " \\\\\n";
        std::cout << " = " << dr.normalized.latex() << " \\\\\n";
        std::cout << "\\Psi = " << inv.value.latex() << "\n";
    } else if (mode == "latex") {
        std::cout << inv.value.latex() << "\n";
    } else if (mode == "value") {
        std::cout << inv.value.str() << "\n";
    } else {
        throw CLI::ValidationError("--mode must be value, trace or latex");
    }
    return 0;
}

int cmd_verify(const RunOpts& o) {
    auto results = run_verify(o.only);
    if (results.empty()) {
        std::cerr << "no checks selected by --only " << o.only << "\n";
        return 2;
    }
    bool failed = false;
    for (const auto& r : results) {
        const char* tag = r.status == CheckResult::Status::Pass   ? "PASS"
                          : r.status == CheckResult::Status::Warn ? "WARN"
                                                                  : "FAIL";
        std::cout << tag << " " << r.suite << "." << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << "\n";
        if (r.status == CheckResult::Status::Fail) failed = true;
    }
    // a geometry argument additionally runs the consistency comparator
    if (!o.geometry.empty() && o.only.empty()) {
        Geometry g = resolve_geometry(o.geometry, o.degree, o.chi);
        ConsistencyReport rep = consistency_report(g.pair_class(o.degree, 2), g);
        std::cout << (rep.all_agree ? "PASS" : "FAIL") << " consistency\n" << rep.render();
        if (!rep.all_agree) failed = true;
    }
    return failed ? 1 : 0;
}

struct SweepVar {
    std::string name;
    long lo, hi;
};

SweepVar parse_sweep(const std::string& s) {
    size_t eq = s.find('=');
    size_t dots = s.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq)
        throw CLI::ValidationError("--sweep expects var=lo..hi, got '" + s + "'");
    SweepVar v;
    v.name = s.substr(0, eq);
    v.lo = std::stol(s.substr(eq + 1, dots - eq - 1));
    v.hi = std::stol(s.substr(dots + 2));
    if (v.hi < v.lo) throw CLI::ValidationError("empty sweep range '" + s + "'");
    return v;
}

int cmd_table(const RunOpts& o) {
    Geometry g = resolve_geometry(o.geometry, o.degree, o.chi);
    Invariant inv = run_invariant(o, g, nullptr);
    std::vector<SweepVar> vars;
    long cells = 1;
    for (const auto& s : o.sweeps) {
        vars.push_back(parse_sweep(s));
        cells *= vars.back().hi - vars.back().lo + 1;
    }
    if (cells > 10000) throw CLI::ValidationError("sweep exceeds 10^4 cells");
    for (const auto& v : vars) std::cout << v.name << "\t";
    std::cout << "value\n";
    if (vars.empty()) return 0;

    std::vector<long> cur(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) cur[i] = vars[i].lo;
    for (;;) {
        std::map<std::string, Rat> at;
        for (size_t i = 0; i < vars.size(); ++i) {
            std::cout << cur[i] << "\t";
            at[vars[i].name] = Rat(cur[i]);
        }
        try {
            std::cout << rat_str(inv.value.eval(at)) << "\n";
        } catch (const CalcError& e) {
            std::cout << "error:" << e.what() << "\n";
        }
        size_t i = 0;
        for (; i < vars.size(); ++i) {
            if (++cur[i] <= vars[i].hi) break;
            cur[i] = vars[i].lo;
        }
        if (i == vars.size()) break;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact stack-function calculator for rank-2 stable-pair invariants"};
    app.require_subcommand(1);
    RunOpts o;

    CLI::App* compute = app.add_subcommand("compute", "compute one invariant");
    add_class_flags(compute, o);
    compute->add_option("--mode", o.mode, "value | trace | latex");

    CLI::App* trace = app.add_subcommand("trace", "compute with the full derivation trace");
    add_class_flags(trace, o);
    trace->add_option("--mode", o.mode, "value | trace | latex");

    CLI::App* verify = app.add_subcommand("verify", "run the built-in golden checks");
    add_class_flags(verify, o);
    verify->add_option("--only", o.only, "restrict to one suite");

    CLI::App* table = app.add_subcommand("table", "numeric sweep of an invariant");
    add_class_flags(table, o);
    table->add_option("--sweep", o.sweeps, "numeric range var=lo..hi (repeatable)");

    try {
        app.parse(argc, argv);
        if (compute->parsed()) return cmd_compute(o, false);
        if (trace->parsed()) return cmd_compute(o, true);
        if (verify->parsed()) return cmd_verify(o);
        if (table->parsed()) return cmd_table(o);
        return 2;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const CalcError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
