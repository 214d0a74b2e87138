// Acceptance suite: each criterion prints one PASS/FAIL line and the binary
// exits nonzero if the selected criterion fails. Run with the criterion
// number as the only argument, or with no argument for the whole battery.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "hallpair/pipeline.hpp"
#include "hallpair/verify.hpp"

using namespace hallpair;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    int number;
    std::string title;
    double budget_seconds;
    std::function<void(std::vector<std::string>&)> run;  // push failure messages
};

void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
}

// 1. worked-example invariant: the degree-1 direct computation in exact form
void criterion1(std::vector<std::string>& f) {
    Geometry g = make_conifold(1, "r");
    DirectResult r = compute_direct(g.pair_class(1, 2), g);
    Poly expect_val = g.poly("n+r") * rat(1, 2);
    expect(f, r.invariant.value == expect_val,
           "direct invariant is " + r.invariant.value.str() + ", expected " + expect_val.str());
}

// 2. cancellation audit: the epsilon normal form is -1/2(n+r)[pt/Gm] and
// every torus-squared term introduced by the strata and products cancels
void criterion2(std::vector<std::string>& f) {
    Geometry g = make_conifold(1, "r");
    HallElement eps = epsilon_rank2(g.pair_class(1, 2), g);

    // audit the torus-squared bookkeeping before normalization
    Rat p_borel = 0, p_torus2 = 0;
    for (const auto& t : eps.sf.terms()) {
        if (t.space.str() != "P^(n+r-1)") continue;
        if (t.group == Group::semidirect(1, 2)) p_borel += t.coeff.constant_term();
        if (t.group == Group::torus(2)) p_torus2 += t.coeff.constant_term();
    }
    expect(f, p_borel == rat(1, 2) && p_torus2 == rat(-1, 2),
           "unexpected split-sector coefficients before decomposition");
    expect(f, p_borel + p_torus2 == 0, "torus-squared terms do not cancel");

    StackFn nf = normalize(eps.sf);
    expect(f, is_virtually_indecomposable(nf), "normal form is not virtually indecomposable");
    expect(f, nf.terms().size() == 1, "normal form has " + std::to_string(nf.terms().size()) +
                                          " terms: " + nf.str());
    if (nf.terms().size() == 1) {
        const Term& t = nf.terms()[0];
        expect(f, t.space.is_point() && t.group == Group::torus(1), "wrong basis term " + t.str());
        expect(f, t.coeff == g.poly("n+r") * rat(-1, 2),
               "normal-form coefficient " + t.coeff.str());
    }
}

// 3. wall-crossing agreement at degree 1 with DT(1) = 1
void criterion3(std::vector<std::string>& f) {
    Geometry g = make_conifold(1, "r");
    expect(f, g.dt_value(1) == 1, "DT(1) is not 1");
    Poly wc = wallcrossing_rank2(g.pair_class(1, 2), g).value;
    Poly direct = compute_direct(g.pair_class(1, 2), g).invariant.value;
    expect(f, wc == g.poly("n+r") * rat(1, 2), "wall-crossing value " + wc.str());
    expect(f, wc == direct, "wall-crossing disagrees with the direct value");
}

// 4. second worked example: the degree-2 direct computation against the
// quoted closed form -1/2(n+q)^2 - (n+q)
void criterion4(std::vector<std::string>& f) {
    Geometry g = make_conifold(2, "q");
    DirectResult r = compute_direct(g.pair_class(2, 2), g);
    Poly m = g.poly("n+q");
    Poly pinned = m * m * rat(-1, 2) - m;
    expect(f, r.invariant.value == pinned,
           "direct invariant is " + r.invariant.value.str() + ", expected " + pinned.str() +
               " (difference " + (r.invariant.value - pinned).str() +
               "; the computed value equals the wall-crossing sum with the multicover entry "
               "DT(2)=1/4 -- see notes/decisions ledger)");
}

// 5. Poincare-polynomial suite with the documented non-exact division
void criterion5(std::vector<std::string>& f) {
    auto ps = std::make_shared<ParamSpace>(std::vector<std::string>{"t"});
    Poly t2 = Poly::var(ps, "t", 2), t4 = Poly::var(ps, "t", 4);
    Poly one = Poly::constant(ps, 1);
    Poly gl2 = group_poincare(Group::gl2(), ps);
    expect(f, gl2 == (t4 - one) * (t2 - one) * t2, "P_t(GL2) is " + gl2.str());

    DivResult orbit = fibration_base(gl2, t2 * (t2 - one) * (t2 - one));
    expect(f, orbit.exact() && orbit.quotient == t2 + one,
           "orbit quotient is " + orbit.quotient.str());

    Poly torus2 = (t2 - one) * (t2 - one);
    DivResult comp = fibration_base(gl2 - torus2, torus2);
    expect(f, comp.exact() && comp.quotient == t4 + t2 - one,
           "complement quotient is " + comp.quotient.str());

    DivResult fiber = fibration_base(comp.quotient, t2 - one);
    expect(f, !fiber.exact(), "the fiber division is unexpectedly exact");
    expect(f, fiber.quotient == t2 + Poly::constant(ps, 2) && fiber.remainder == one,
           "fiber division returned quotient " + fiber.quotient.str() + ", remainder " +
               fiber.remainder.str());

    // cmd_verify surfaces the same division as a documented warning, not a failure
    bool warned = false, failed = false;
    for (const auto& c : run_verify("poincare")) {
        if (c.name == "selfext-fiber-division") warned = c.status == CheckResult::Status::Warn;
        if (c.status == CheckResult::Status::Fail) failed = true;
    }
    expect(f, warned && !failed, "verify does not surface the division as a warning");
}

// 6. stratum-image suite on the divisible-class geometries
void criterion6(std::vector<std::string>& f) {
    for (const std::string base :
         {"../share/geometries/", "../../share/geometries/", "share/geometries/"}) {
        std::ifstream probe(base + "synthetic_divisible.geom");
        if (!probe) continue;
        Geometry syn = load_geometry(base + "synthetic_divisible.geom");
        Poly m = syn.poly("n+s");
        auto images = epsilon_strata_psi(syn.pair_class(2, 2), syn);
        bool selfext_ok = false, diag_ok = false, offdiag_zero = true;
        for (const auto& [label, inv] : images) {
            if (label == "selfext(half,half)") {
                // carries the 3/2 prefactor against the recorded integral
                const StratumIntegrals* rec = syn.integrals(syn.pair_class(2, 2));
                Parity p = parity_of(*rec->i2_dim);
                Rat sgn = p == Parity::Even ? -1 : 1;
                selfext_ok = inv.value == *rec->i2 * (sgn * rat(3, 2));
            }
            if (label == "split-diag(half,half)") {
                const StratumIntegrals* rec = syn.integrals(syn.pair_class(2, 2));
                Parity p = parity_of(*rec->chi_half_dim);
                Rat behrend = -1, dsign = p == Parity::Even ? 1 : -1;
                diag_ok = inv.value == *rec->chi_half * (behrend * dsign * rat(-1, 4));
            }
            if (label.find("split-offdiag") != std::string::npos && !inv.value.is_zero())
                offdiag_zero = false;
        }
        expect(f, selfext_ok, "self-extension image misses the 3/2 prefactor");
        expect(f, diag_ok, "split-diagonal image misses the -1/4 factor");
        expect(f, offdiag_zero, "a split off-diagonal image is nonzero");

        // the same stratum images on the conifold degree-2 instance
        Geometry g2 = make_conifold(2, "q");
        for (const auto& [label, inv] : epsilon_strata_psi(g2.pair_class(2, 2), g2))
            if (label.find("split-offdiag") != std::string::npos)
                expect(f, inv.value.is_zero(), "conifold split off-diagonal image nonzero");
        return;
    }
    f.push_back("synthetic_divisible.geom fixture not found");
}

// 7. property battery: substitutes for the non-reproducible headline scale
void criterion7(std::vector<std::string>& f) {
    // normalize idempotence and linearity, 200 randomized functions
    auto ps = std::make_shared<ParamSpace>(std::vector<std::string>{"n", "r", "t"});
    std::mt19937 rng(24601);
    auto pick = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    auto rand_fn = [&]() {
        std::vector<Term> ts;
        long k = pick(0, 5);
        for (long i = 0; i < k; ++i) {
            Space sp = pick(0, 1) ? Space::projective(Poly::constant(ps, pick(0, 4)))
                                  : Space::grassmannian(2, Poly::constant(ps, pick(2, 6)));
            Group gr = pick(0, 1) ? (pick(0, 1) ? Group::gl2() : Group::semidirect(1, 2))
                                  : Group::torus(static_cast<int>(pick(1, 2)));
            Rat c(pick(-6, 6), pick(1, 4));
            c.canonicalize();
            ts.push_back(Term{Poly::constant(ps, c), sp, gr, Poly::constant(ps, pick(-2, 2)), ""});
        }
        return StackFn(std::move(ts));
    };
    for (int i = 0; i < 200; ++i) {
        StackFn a = rand_fn(), b = rand_fn();
        StackFn na = normalize(a);
        if (normalize(na).str() != na.str()) {
            f.push_back("normalize is not idempotent on sample " + std::to_string(i));
            break;
        }
        if (normalize(a + b).str() != (normalize(a) + normalize(b)).str()) {
            f.push_back("normalize is not linear on sample " + std::to_string(i));
            break;
        }
    }

    // Grassmannian counts against subset enumeration
    for (int mdim = 2; mdim <= 8; ++mdim) {
        for (int k = 1; k < mdim; ++k) {
            long count = 0;
            for (unsigned mask = 0; mask < (1u << mdim); ++mask) {
                int bits = 0;
                for (int i = 0; i < mdim; ++i) bits += (mask >> i) & 1;
                if (bits == k) ++count;
            }
            Poly chi = euler_char(Space::grassmannian(k, Poly::constant(ps, mdim)));
            expect(f, chi.constant_term() == count,
                   "G(" + std::to_string(k) + "," + std::to_string(mdim) + ") count mismatch");
        }
    }

    // parity versus twenty-point evaluation
    Poly sample = Poly::constant(ps, 4) - Poly::var(ps, "n") * Rat(2) - Poly::var(ps, "r") * Rat(2);
    expect(f, parity_of(sample) == Parity::Even, "parity verdict");
    for (int i = 0; i < 20; ++i) {
        Rat v = sample.eval({{"n", Rat(pick(-20, 20))}, {"r", Rat(pick(-20, 20))}});
        expect(f, v.get_num() % 2 == 0, "even verdict fails numerically");
    }

    // direct equals formula on the geometries with recorded integrals
    for (Geometry g : {make_conifold(1, "r"), make_conifold(2, "q")}) {
        for (const auto& [degree, rec] : g.integrals_table) {
            PairClass b = g.pair_class(degree, 2);
            expect(f, compute_formula(b, rec, g).value == compute_direct(b, g).invariant.value,
                   "formula and direct disagree at degree " + std::to_string(degree));
        }
    }

    // trace determinism
    {
        Geometry g = make_conifold(1, "r");
        DirectResult a = compute_direct(g.pair_class(1, 2), g);
        DirectResult b = compute_direct(g.pair_class(1, 2), g);
        expect(f, a.trace.render_text() == b.trace.render_text(), "traces differ between runs");
    }

    // DT homogeneity at ten numeric scalings
    {
        Geometry g = make_conifold(2, "q");
        PairClass b = g.pair_class(2, 2);
        auto base = wallcrossing_rank2_terms(b, g);
        for (long c = 2; c <= 11; ++c) {
            Geometry h = g;
            for (auto& [deg, v] : h.dt_table) v *= Rat(c);
            auto scaled = wallcrossing_rank2_terms(b, h);
            for (size_t i = 0; i < base.size(); ++i) {
                Rat factor = 1;
                for (int k = 0; k < base[i].first; ++k) factor *= Rat(c);
                expect(f, scaled[i].second == base[i].second * factor,
                       "length-" + std::to_string(base[i].first) + " term does not scale by c^l");
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "degree-1 worked invariant equals 1/2(n+r)", 1.0, criterion1},
        {2, "epsilon normal form is -1/2(n+r)[pt/Gm] after exact cancellation", 1.0, criterion2},
        {3, "wall-crossing sum with DT(1)=1 matches the direct value", 1.0, criterion3},
        {4, "degree-2 direct value equals -1/2(n+q)^2-(n+q)", 5.0, criterion4},
        {5, "Poincare suite with the documented non-exact fiber division", 1.0, criterion5},
        {6, "stratum images: zero split strata, 3/2 and -1/4 prefactors", 10.0, criterion6},
        {7, "property battery", 10.0, criterion7},
    };

    int selected = argc > 1 ? std::stoi(argv[1]) : 0;
    bool any_failed = false;
    for (const auto& c : criteria) {
        if (selected && c.number != selected) continue;
        std::vector<std::string> failures;
        auto start = Clock::now();
        try {
            c.run(failures);
        } catch (const CalcError& e) {
            failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (secs > c.budget_seconds)
            failures.push_back("exceeded the " + std::to_string(c.budget_seconds) + "s budget");
        if (failures.empty()) {
            std::cout << "CRITERION " << c.number << " PASS  " << c.title << "\n";
        } else {
            any_failed = true;
            std::cout << "CRITERION " << c.number << " FAIL  " << c.title << "\n";
            for (const auto& m : failures) std::cout << "    " << m << "\n";
        }
    }
    return any_failed ? 1 : 0;
}
