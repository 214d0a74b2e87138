#include "hallpair/pipeline.hpp"

#include <algorithm>

namespace hallpair {

// ---- trace ---------------------------------------------------------------

void Trace::step(std::string rule, std::string input, std::string output, std::string assertion) {
    if (!registered(rule)) throw CalcError("unregistered trace rule '" + rule + "'");
    steps_.push_back({std::move(rule), std::move(input), std::move(output), std::move(assertion)});
}

const std::vector<std::string>& Trace::rule_registry() {
    static const std::vector<std::string> rules = {
        "semistable-strata",      // stratification of the semistable stack
        "hall-product",           // extension-strata product of two deltas
        "ordered-decomposition",  // one -1/2-weighted ordered product
        "epsilon-element",        // assembled epsilon element
        "torus-decomposition",    // F-coefficient split of a non-abelian quotient
        "euler-reduction",        // [X/G] -> chi(X) [pt/G]
        "motivic-integration",    // bundle integrand over a base
        "normal-form",            // combined like terms on the [pt/Gm^k] basis
        "behrend-evaluation",     // signed point count of a normalized term
        "stable-locus",           // the (empty) stable-locus contribution
        "formula-stratum",        // a closed-form stratum image
        "wallcrossing-term",      // one ordered-decomposition term of the DT sum
    };
    return rules;
}

bool Trace::registered(const std::string& rule) {
    const auto& r = rule_registry();
    return std::find(r.begin(), r.end(), rule) != r.end();
}

std::string Trace::render_text() const {
    std::string out;
    for (size_t i = 0; i < steps_.size(); ++i) {
        const TraceStep& s = steps_[i];
        out += std::to_string(i + 1) + ". [" + s.rule + "] " + s.input + "\n";
        out += "   => " + s.output + "\n";
        if (!s.assertion.empty()) out += "   asserting: " + s.assertion + "\n";
    }
    return out;
}

std::string Trace::render_latex() const {
    std::string out;
    for (const TraceStep& s : steps_) {
        out += "% " + s.rule + "\n";
        out += s.input + " \\;\\longrightarrow\\; " + s.output + " \\\\\n";
    }
    return out;
}

// ---- direct pipeline -------------------------------------------------------

DirectResult compute_direct(const PairClass& beta2, const Geometry& g, const FTable& ftable) {
    DirectResult r;
    HallElement eps = epsilon_rank2(beta2, g, &r.trace);
    r.epsilon = eps.sf;
    r.trace.step("stable-locus", beta2.str(), "0",
                 "all rank-2 objects are strictly semistable; the stable locus contributes nothing");

    // staged rewriting, every step recorded: first the subtorus decomposition
    // of each non-abelian quotient, then the Euler reduction of each space
    StackFn decomposed;
    for (const Term& t : eps.sf.terms()) {
        if (t.group.is_torus()) {
            decomposed = decomposed + StackFn::single(t);
            continue;
        }
        StackFn dec = torus_decompose(t, ftable);
        r.trace.step("torus-decomposition", t.str(), dec.str());
        decomposed = decomposed + dec;
    }
    StackFn reduced;
    for (const Term& t : decomposed.terms()) {
        if (t.space.is_point()) {
            reduced = reduced + StackFn::single(t);
            continue;
        }
        StackFn red = apply_chi_relation(t);
        r.trace.step("euler-reduction", t.str(), red.str(),
                     "the stabilizer acts through the quotient");
        reduced = reduced + red;
    }
    // the staged passes already land on the stacky-point basis; normalize is
    // the idempotent safety net and the like-term combination record
    StackFn nf = normalize(reduced, ftable);
    r.trace.step("normal-form", eps.sf.str(), nf.str(),
                 "like-term combination on the stacky-point basis");
    r.normalized = nf;
    if (!is_virtually_indecomposable(nf))
        throw CalcError("normal form is not virtually indecomposable: " + nf.str());
    r.invariant = lie_morphism_psi({beta2, nf}, &r.trace);
    return r;
}

// ---- closed-form stratum evaluation ----------------------------------------

Invariant compute_formula(const PairClass& beta2, const StratumIntegrals& rec, const Geometry& g) {
    Poly total = g.zero();
    auto sign_plus_one = [&](const Poly& dim, const char* what) {
        Parity p = parity_of(dim);
        if (p == Parity::Undecidable)
            throw CalcError(std::string(what) + ": undecidable dimension parity " + dim.str());
        return p == Parity::Even ? -1 : 1;  // (-1)^(dim+1)
    };
    for (const auto& e : rec.i1)
        total += e.value * rat(sign_plus_one(e.dim, "pair stratum"), 2);
    if (rec.i2) total += *rec.i2 * rat(3 * sign_plus_one(*rec.i2_dim, "self-extension stratum"), 2);

    bool divisible = beta2.degree % 2 == 0 && beta2.degree > 0 &&
                     g.has_rank1(beta2.degree / 2, 1);
    if (rec.chi_half || divisible) {
        Poly chi_half = rec.chi_half ? *rec.chi_half
                                     : rank1_chi_wallcrossing(g.pair_class(beta2.degree / 2, 1), g);
        if (!rec.chi_half_dim)
            throw CalcError("split diagonal stratum present but no dimension recorded");
        Parity p = parity_of(*rec.chi_half_dim);
        if (p == Parity::Undecidable)
            throw CalcError("split diagonal stratum: undecidable dimension parity");
        total += chi_half * rat(p == Parity::Even ? 1 : -1, 4);
    }
    return {total, beta2};
}

// ---- wall-crossing sums -----------------------------------------------------

namespace {

// ordered compositions of d into positive parts
void compositions(int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (d == 0) {
        if (!cur.empty()) out.push_back(cur);
        return;
    }
    for (int first = 1; first <= d; ++first) {
        cur.push_back(first);
        compositions(d - first, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> sheaf_decompositions(int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    compositions(degree, cur, out);
    return out;
}

Rat factorial(int n) {
    Rat f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

Poly rank1_chi_wallcrossing(const PairClass& half, const Geometry& g) {
    Poly total = g.zero();
    PairClass degenerate = g.degenerate_class();
    for (const auto& comp : sheaf_decompositions(half.degree)) {
        Poly term = g.constant(Rat(1) / factorial(static_cast<int>(comp.size())));
        Poly sign_exp = g.zero();
        bool have_dt = true;
        PairClass prefix{0, g.zero(), 2};
        for (size_t i = 0; i < comp.size(); ++i) {
            int d = comp[i];
            if (g.dt_table.find(d) == g.dt_table.end()) {
                have_dt = false;
                break;
            }
            PairClass piece = g.pair_class(d, 0);
            // the twist pairing of the piece, chibar((piece,0),(0,1)) = n*deg + chi
            Poly factor = g.euler_pairing(PairClass{piece.degree, piece.sheaf_chi, 0},
                                          PairClass{0, g.zero(), 1});
            term *= factor * g.dt_value(d);
            PairClass pre2{prefix.degree, prefix.sheaf_chi, 2};
            sign_exp += g.euler_pairing(pre2, PairClass{piece.degree, piece.sheaf_chi, 0});
            if (i == 0) sign_exp += g.euler_pairing(PairClass{0, g.zero(), 2},
                                                    PairClass{piece.degree, piece.sheaf_chi, 0});
            prefix.degree += d;
            prefix.sheaf_chi += piece.sheaf_chi;
        }
        if (!have_dt) throw CalcError(g.name + ": missing DT entry in a decomposition of " +
                                      half.str());
        Parity p = parity_of(sign_exp);
        if (p == Parity::Undecidable)
            throw CalcError("undecidable sign parity in the rank-1 expansion: " + sign_exp.str());
        if (p == Parity::Odd) term = -term;
        total += term;
    }
    return total;
}

std::vector<std::pair<int, Poly>> wallcrossing_rank2_terms(const PairClass& beta2,
                                                           const Geometry& g) {
    std::vector<std::pair<int, Poly>> terms;
    for (const auto& comp : sheaf_decompositions(beta2.degree)) {
        Poly term = g.constant(rat(-1, 4) / factorial(static_cast<int>(comp.size())));
        Poly sign_exp = g.zero();
        PairClass prefix{0, g.zero(), 2};
        for (size_t i = 0; i < comp.size(); ++i) {
            PairClass piece = g.pair_class(comp[i], 0);
            Poly pairing = g.euler_pairing(prefix, piece);
            term *= pairing * g.dt_value(comp[i]);
            sign_exp += pairing;
            if (i == 0) sign_exp += g.euler_pairing(PairClass{0, g.zero(), 2}, piece);
            prefix.degree += piece.degree;
            prefix.sheaf_chi += piece.sheaf_chi;
        }
        Parity p = parity_of(sign_exp);
        if (p == Parity::Undecidable)
            throw CalcError("undecidable sign parity in the wall-crossing sum: " + sign_exp.str());
        if (p == Parity::Odd) term = -term;
        terms.emplace_back(static_cast<int>(comp.size()), term);
    }
    return terms;
}

Invariant wallcrossing_rank2(const PairClass& beta2, const Geometry& g) {
    Poly total = g.zero();
    for (const auto& [l, term] : wallcrossing_rank2_terms(beta2, g)) total += term;
    return {total, beta2};
}

Invariant wallcrossing_general(const PairClass& beta, int rank, const Geometry& g) {
    if (rank < 1) throw CalcError("wallcrossing_general needs rank >= 1");
    Poly total = g.zero();
    Rat lead = rat((rank * rank + 1) % 2 == 0 ? 1 : -1, rank * rank);
    for (const auto& comp : sheaf_decompositions(beta.degree)) {
        Poly term = g.constant(lead / factorial(static_cast<int>(comp.size())));
        Poly sign_exp = g.zero();
        PairClass prefix{0, g.zero(), rank};
        for (size_t i = 0; i < comp.size(); ++i) {
            PairClass piece = g.pair_class(comp[i], 0);
            Poly pairing = g.euler_pairing(prefix, piece);
            term *= pairing * g.dt_value(comp[i]);
            sign_exp += pairing;
            if (i == 0) sign_exp += g.euler_pairing(PairClass{0, g.zero(), rank}, piece);
            prefix.degree += piece.degree;
            prefix.sheaf_chi += piece.sheaf_chi;
        }
        Parity p = parity_of(sign_exp);
        if (p == Parity::Undecidable)
            throw CalcError("undecidable sign parity in the general-rank sum: " + sign_exp.str());
        if (p == Parity::Odd) term = -term;
        total += term;
    }
    return {total, PairClass{beta.degree, beta.sheaf_chi, rank}};
}

// ---- consistency ------------------------------------------------------------

std::string ConsistencyReport::render() const {
    std::string out = "class " + cls.str() + "\n";
    for (const auto& l : lines) {
        out += "  " + l.name + ": ";
        out += l.available ? l.value.str() : ("unavailable (" + l.error + ")");
        out += "\n";
    }
    for (const auto& v : verdicts) out += "  " + v + "\n";
    return out;
}

ConsistencyReport consistency_report(const PairClass& beta2, const Geometry& g) {
    ConsistencyReport rep;
    rep.cls = beta2;
    auto run = [&](const std::string& name, auto&& fn) {
        ConsistencyLine line;
        line.name = name;
        try {
            line.value = fn();
            line.available = true;
        } catch (const CalcError& e) {
            line.error = e.what();
        }
        rep.lines.push_back(std::move(line));
    };
    run("direct", [&] { return compute_direct(beta2, g).invariant.value; });
    run("formula", [&] {
        const StratumIntegrals* rec = g.integrals(beta2);
        if (!rec) throw CalcError("no stratum integrals recorded");
        return compute_formula(beta2, *rec, g).value;
    });
    run("wallcrossing", [&] { return wallcrossing_rank2(beta2, g).value; });

    rep.all_agree = true;
    for (size_t i = 0; i < rep.lines.size(); ++i) {
        for (size_t j = i + 1; j < rep.lines.size(); ++j) {
            const auto& a = rep.lines[i];
            const auto& b = rep.lines[j];
            if (!a.available || !b.available) continue;
            if (a.value == b.value) {
                rep.verdicts.push_back(a.name + " == " + b.name);
            } else {
                rep.verdicts.push_back(a.name + " != " + b.name + ", difference " +
                                       (a.value - b.value).str());
                rep.all_agree = false;
            }
        }
    }
    return rep;
}

}  // namespace hallpair
