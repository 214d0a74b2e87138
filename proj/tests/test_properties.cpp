#include "doctest.h"
#include "hallpair/pipeline.hpp"

#include <random>

using namespace hallpair;

namespace {

struct Gen {
    std::mt19937 rng{987654321};
    ParamSpacePtr ps = std::make_shared<ParamSpace>(std::vector<std::string>{"n", "r", "t"});

    long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

    Poly coeff() {
        Rat c(pick(-6, 6), pick(1, 4));
        c.canonicalize();
        return Poly::constant(ps, c);
    }

    Space space() {
        switch (pick(0, 4)) {
            case 0: return Space::point(ps);
            case 1: return Space::projective(Poly::constant(ps, pick(0, 5)));
            case 2: return Space::grassmannian(2, Poly::constant(ps, pick(2, 6)));
            case 3: return Space::projective(Poly::var(ps, "n") + Poly::constant(ps, pick(0, 3)));
            default: return Space::flag12(Poly::constant(ps, pick(2, 5)));
        }
    }

    Group group() {
        switch (pick(0, 4)) {
            case 0: return Group::torus(1);
            case 1: return Group::torus(2);
            case 2: return Group::gl2();
            case 3: return Group::semidirect(1, 2);
            default: return Group::semidirect(static_cast<int>(pick(1, 3)), 1);
        }
    }

    Term term() { return Term{coeff(), space(), group(), Poly::constant(ps, pick(-3, 3)), ""}; }

    StackFn fn(int max_terms = 5) {
        std::vector<Term> ts;
        long k = pick(0, max_terms);
        for (long i = 0; i < k; ++i) ts.push_back(term());
        return StackFn(std::move(ts));
    }
};

}  // namespace

TEST_CASE("normalize is idempotent and linear on random stack functions") {
    Gen gen;
    for (int i = 0; i < 200; ++i) {
        StackFn a = gen.fn();
        StackFn b = gen.fn();
        StackFn na = normalize(a);
        CHECK(normalize(na).str() == na.str());
        // linearity: normalize(a + b) = normalize(a) + normalize(b)
        CHECK(normalize(a + b).str() == (normalize(a) + normalize(b)).str());
        // scaling commutes with normalization
        StackFn half = normalize(a.scaled(rat(1, 2)));
        CHECK(half.str() == na.scaled(rat(1, 2)).str());
    }
}

TEST_CASE("normalized functions live on the stacky-point basis") {
    Gen gen;
    for (int i = 0; i < 100; ++i) {
        StackFn nf = normalize(gen.fn());
        for (const auto& t : nf.terms()) {
            CHECK(t.space.is_point());
            CHECK(t.group.is_torus());
        }
    }
}

TEST_CASE("torus decomposition preserves the F-weighted coefficient sum") {
    Gen gen;
    const FTable& f = default_f_table();
    for (int i = 0; i < 100; ++i) {
        Term t = gen.term();
        Rat row = 0;
        for (const auto& [q, c] : f.decomposition_targets(t.group)) row += c;
        StackFn dec = torus_decompose(t);
        Rat total = 0;
        for (const auto& piece : dec.terms()) total += piece.coeff.constant_term();
        CHECK(total == t.coeff.constant_term() * row);
    }
}

TEST_CASE("scissor relation survives normalization on random pairs") {
    Gen gen;
    for (int i = 0; i < 50; ++i) {
        Space a = gen.space(), b = gen.space();
        Group g = gen.group();
        Poly rd = Poly::constant(gen.ps, gen.pick(-2, 2));
        StackFn whole =
            StackFn::single(Term{Poly::constant(gen.ps, 1), Space::disjoint(a, b), g, rd, ""});
        StackFn parts = StackFn::single(Term{Poly::constant(gen.ps, 1), a, g, rd, ""}) +
                        StackFn::single(Term{Poly::constant(gen.ps, 1), b, g, rd, ""});
        CHECK(normalize(whole).str() == normalize(parts).str());
    }
}

TEST_CASE("direct equals formula on every geometry with a recorded integral table") {
    std::vector<Geometry> geoms;
    geoms.push_back(make_conifold(1, "r"));
    geoms.push_back(make_conifold(2, "q"));
    for (const Geometry& g : geoms) {
        for (const auto& [degree, rec] : g.integrals_table) {
            PairClass b = g.pair_class(degree, 2);
            CHECK(compute_formula(b, rec, g).value == compute_direct(b, g).invariant.value);
        }
    }
}

TEST_CASE("numeric sweep of the degree-1 invariant matches the closed form") {
    Geometry g = make_conifold(1, "r");
    Poly v = compute_direct(g.pair_class(1, 2), g).invariant.value;
    for (long n = 1; n <= 3; ++n) {
        Rat at = v.eval({{"n", Rat(n)}, {"r", 1}});
        CHECK(at == rat(n + 1, 2));
    }
}

TEST_CASE("parity verdicts agree with twenty-point numeric evaluation") {
    auto ps = std::make_shared<ParamSpace>(std::vector<std::string>{"n", "r", "t"});
    std::mt19937 rng(5150);
    std::uniform_int_distribution<long> val(-25, 25), c(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        Poly p = Poly::constant(ps, 2 * c(rng)) + Poly::var(ps, "n") * Rat(2 * c(rng)) +
                 Poly::var(ps, "r") * Rat(2 * c(rng)) +
                 Poly::var(ps, "n") * Poly::var(ps, "r") * Rat(2 * c(rng)) +
                 Poly::constant(ps, trial % 2);
        Parity verdict = parity_of(p);
        REQUIRE(verdict != Parity::Undecidable);
        for (int i = 0; i < 20; ++i) {
            Rat v = p.eval({{"n", Rat(val(rng))}, {"r", Rat(val(rng))}});
            bool even = v.get_num() % 2 == 0;
            CHECK(even == (verdict == Parity::Even));
        }
    }
}
