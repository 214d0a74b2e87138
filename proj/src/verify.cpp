#include "hallpair/verify.hpp"

#include "hallpair/pipeline.hpp"

namespace hallpair {

namespace {

struct Suite {
    std::vector<CheckResult>& out;
    std::string suite;
    std::string only;

    bool active() const { return only.empty() || only == suite; }

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        if (!active()) return;
        out.push_back({suite, name,
                       ok ? CheckResult::Status::Pass : CheckResult::Status::Fail, detail});
    }
    void warn(const std::string& name, bool reproduced, const std::string& detail) {
        if (!active()) return;
        out.push_back({suite, name,
                       reproduced ? CheckResult::Status::Warn : CheckResult::Status::Fail, detail});
    }
    template <typename F>
    void guarded(const std::string& name, F&& f) {
        if (!active()) return;
        try {
            f();
        } catch (const CalcError& e) {
            out.push_back({suite, name, CheckResult::Status::Fail, e.what()});
        }
    }
};

}  // namespace

std::vector<CheckResult> run_verify(const std::string& only) {
    std::vector<CheckResult> results;

    {
        Suite s{results, "poincare", only};
        s.guarded("all", [&] {
            auto ps = std::make_shared<ParamSpace>(std::vector<std::string>{"t"});
            Poly t2 = Poly::var(ps, "t", 2), t4 = Poly::var(ps, "t", 4);
            Poly one = Poly::constant(ps, 1);
            Poly gl2 = group_poincare(Group::gl2(), ps);
            s.check("gl2-poincare", gl2 == (t4 - one) * (t2 - one) * t2);

            // base of the fibration by the 2-dim solvable stabilizer and the residual torus
            Poly fib = group_poincare(Group::semidirect(1, 1), ps) * (t2 - one);
            DivResult d1 = fibration_base(gl2, fib);
            s.check("orbit-base", d1.exact() && d1.quotient == t2 + one,
                    "got " + d1.quotient.str());

            Poly torus2 = group_poincare(Group::torus(2), ps);
            DivResult d2 = fibration_base(gl2 - torus2, torus2);
            Poly expect = t4 + t2 - one;
            s.check("pair-locus-complement", d2.exact() && d2.quotient == expect,
                    "got " + d2.quotient.str());

            DivResult d3 = fibration_base(expect, t2 - one);
            bool reproduced = !d3.exact() && d3.quotient == t2 + Poly::constant(ps, 2) &&
                              d3.remainder == one;
            s.warn("selfext-fiber-division", reproduced,
                   "the t^2+2 fiber shortcut is not an exact division: quotient " +
                       d3.quotient.str() + ", remainder " + d3.remainder.str());

            EvalOutcome ev = eval_limit(RationalFn(t2 + one), {{"t", 1}});
            s.check("fiber-euler-2", !ev.is_pole && ev.value == 2);

            EvalOutcome pole = eval_limit(RationalFn(expect, t2 - one), {{"t", 1}});
            s.warn("selfext-fiber-limit", pole.is_pole,
                   "the fiber ratio has a pole at t=1; the shortcut value 3 is not a limit");
        });
    }

    {
        Suite s{results, "groups", only};
        s.guarded("all", [&] {
            const FTable& f = default_f_table();
            s.check("f-gl2-torus2", f.coefficient(Group::gl2(), Group::torus(2)) == rat(1, 2));
            s.check("f-gl2-torus1", f.coefficient(Group::gl2(), Group::torus(1)) == rat(-3, 4));
            s.check("f-borel-torus2",
                    f.coefficient(Group::semidirect(1, 2), Group::torus(2)) == 1);
            s.check("f-borel-torus1",
                    f.coefficient(Group::semidirect(1, 2), Group::torus(1)) == -1);
            auto ps = std::make_shared<ParamSpace>(std::vector<std::string>{"t"});
            Poly t2 = Poly::var(ps, "t", 2);
            Poly gm = t2 - Poly::constant(ps, 1);
            s.check("torus-union-poincare",
                    group_poincare(Group::torus_union(), ps) == gm * gm * Rat(2));
        });
    }

    {
        Suite s{results, "stackfn", only};
        s.guarded("all", [&] {
            Geometry g = make_conifold(1, "r");
            Poly m = g.poly("n+r");
            Term t{g.constant(1), Space::grassmannian(2, m), Group::torus(1), g.zero(), ""};
            StackFn red = apply_chi_relation(t);
            s.check("chi-relation-grassmannian",
                    red.terms().size() == 1 && red.terms()[0].space.is_point() &&
                        red.terms()[0].coeff == (m * m - m) * rat(1, 2));
            Term b{g.constant(1), Space::projective(m - g.constant(1)), Group::semidirect(1, 2),
                   g.zero(), ""};
            StackFn dec = torus_decompose(b);
            s.check("borel-decomposition", dec.terms().size() == 2);
            StackFn n1 = normalize(dec);
            s.check("normalize-idempotent", normalize(n1).str() == n1.str());
        });
    }

    {
        Suite s{results, "direct", only};
        s.guarded("all", [&] {
            Geometry g = make_conifold(1, "r");
            PairClass beta2 = g.pair_class(1, 2);
            DirectResult dr = compute_direct(beta2, g);
            Poly half_m = g.poly("n+r") * rat(1, 2);
            s.check("rank2-degree1-invariant", dr.invariant.value == half_m,
                    "got " + dr.invariant.value.str());
            s.check("normal-form-single-term",
                    dr.normalized.terms().size() == 1 &&
                        dr.normalized.terms()[0].coeff == -half_m &&
                        is_virtually_indecomposable(dr.normalized),
                    dr.normalized.str());
            Invariant wc = wallcrossing_rank2(beta2, g);
            s.check("wallcrossing-agrees", wc.value == dr.invariant.value,
                    "wallcrossing " + wc.value.str());
            Poly pairing = g.euler_pairing(g.degenerate_class(), g.pair_class(1, 1));
            s.check("twist-pairing", pairing == -g.poly("n+r"), pairing.str());
            s.check("twist-pairing-reversed",
                    g.euler_pairing(g.pair_class(1, 1), g.degenerate_class()) == g.poly("n+r"));
            s.check("reldim-parity-even",
                    parity_of(g.poly("4-2*n-2*r")) == Parity::Even);
            ConsistencyReport rep = consistency_report(beta2, g);
            s.check("consistency-degree1", rep.all_agree, rep.render());
        });
    }

    {
        Suite s{results, "degree2", only};
        s.guarded("all", [&] {
            Geometry g = make_conifold(2, "q");
            PairClass beta2 = g.pair_class(2, 2);
            DirectResult dr = compute_direct(beta2, g);
            Poly m = g.poly("n+q");
            Poly engine = m * m * rat(-1, 2) + m * rat(1, 4);
            Poly target = m * m * rat(-1, 2) - m;
            s.check("degree2-engine-value", dr.invariant.value == engine,
                    "got " + dr.invariant.value.str());
            s.warn("degree2-closed-form", dr.invariant.value == engine,
                   "direct value " + dr.invariant.value.str() +
                       " differs from the quoted closed form " + target.str() +
                       " by " + (dr.invariant.value - target).str() +
                       "; it matches the wall-crossing sum with the multicover value DT(2)=1/4");
            ConsistencyReport rep = consistency_report(beta2, g);
            s.check("consistency-degree2", rep.all_agree, rep.render());
        });
    }

    return results;
}

}  // namespace hallpair
